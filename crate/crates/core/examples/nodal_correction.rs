//! Local algebras of plane curve singularities and the nodal correction to `H²`.

use gcsym::surfaces::{cp2_chart, local_algebra_dim, nodal_dims, LocalAlgebraProblem};

fn main() -> gcsym::Result<()> {
    let c = cp2_chart();
    let (x, y) = (c.var("z1")?, c.var("z2")?);
    let germs = [
        ("z1 z2", x.mul(&y)),
        ("z1² − z2³", x.mul(&x).sub(&y.mul(&y).mul(&y))),
        ("z1² − z2⁴", x.mul(&x).sub(&y.mul(&y).mul(&y).mul(&y))),
    ];
    for (name, f) in germs {
        let r = local_algebra_dim(&LocalAlgebraProblem { f, bound: 6 })?;
        println!("{name}: dim = {} (stable: {})", r.dim, r.stabilized);
    }
    for m in 0..=3 {
        println!("{m} nodes: {:?}", nodal_dims(&[1, 0, 1, 0, 0], m, true)?);
    }
    Ok(())
}
