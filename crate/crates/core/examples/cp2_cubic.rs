//! Poisson cohomology of ℂP² for a smooth and a nodal cubic.

use gcsym::homology::rank_exact;
use gcsym::scalar::int;
use gcsym::suite::nodal_cubic;
use gcsym::surfaces::{cp2_poisson_matrix, cp2_table, cubic_from_coefficients};

fn main() -> gcsym::Result<()> {
    let fermat = cubic_from_coefficients(&[1, 0, 0, 0, 0, 0, 1, 0, 0, 1].map(int))?;
    let m = cp2_poisson_matrix(&fermat)?;
    println!("δ⁰ is {}x{} of rank {}", m.rows(), m.cols(), rank_exact(&m));
    print!("{}", cp2_table(&fermat, 0, 1)?.to_markdown());
    println!();
    print!("{}", cp2_table(&nodal_cubic(), 1, 1)?.to_markdown());
    Ok(())
}
