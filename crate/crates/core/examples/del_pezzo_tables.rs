//! `H²` of del Pezzo surfaces `S_k` for `k = 0..8`.

use gcsym::surfaces::{delpezzo_dims, delpezzo_table};

fn main() -> gcsym::Result<()> {
    println!("k | H⁰ H¹ H² | E₂ degenerates");
    for k in 0..=8 {
        let d = delpezzo_dims(k, 0)?;
        let t = delpezzo_table(k, 0, k as u64)?;
        println!("{k} | {} {} {} | {}", d[0], d[1], d[2], t.degenerates_at_e2);
    }
    Ok(())
}
