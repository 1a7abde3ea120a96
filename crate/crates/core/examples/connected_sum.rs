//! `H²` of the elliptic connected sums after `m` transformations.

use gcsym::suite::connected_sum_kappa;
use gcsym::surgery::connected_sum_trace;

fn main() -> gcsym::Result<()> {
    for k in 1..=4 {
        let row: Vec<String> = (1..=4).map(|m| connected_sum_trace(k, m).map(|t| t.h2.to_string())).collect::<Result<_, _>>()?;
        println!("k = {k}: {}", row.join(" "));
    }
    let t = connected_sum_trace(2, 3)?;
    for (l, d) in t.labels.iter().zip(&t.dims) {
        println!("  {l}: {d}");
    }
    println!("κ(J_3) = {}", connected_sum_kappa(3)?);
    Ok(())
}
