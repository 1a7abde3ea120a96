//! The local model `z1·exp(dz1/z1 ∧ dz2 + dz3 ∧ dz4)`, its restriction to
//! the divisor, and the family of deformations by `c·dz̄3∧dz̄4`.

use gcsym::gcs::{deform_family_failures, deform_spinor, log_symplectic_model};
use gcsym::symkernel::{DifferentialForm, Point};
use gcsym::GaussRat;

fn main() -> gcsym::Result<()> {
    let model = log_symplectic_model(2)?;
    let c = model.chart.clone();
    println!("ω_ℂ = {}", model.omega_c);
    let psi = model.stripped_spinor(&model.omega_c)?;
    println!("z1·e^ω = {psi}");
    println!("on z1 = 0: {}", model.restrict_to_divisor(&psi)?);

    let alpha = DifferentialForm::gen(&c, "z̄3")?.wedge(&DifferentialForm::gen(&c, "z̄4")?)?;
    let points = [Point::new().with("z2", 1).with("z3", 2).with("z4", -1)];
    let half = deform_spinor(&model, &alpha.scale_c(&GaussRat::frac(1, 2)), &points)?;
    println!("c = 1/2: nondegenerate on the divisor = {}", half.nondegenerate());
    let cs: Vec<GaussRat> = [0, 1, 2, 3].map(|n| GaussRat::frac(n, 2)).to_vec();
    let bad = deform_family_failures(&model, &alpha, &cs, &points)?;
    println!("degenerate for c in {bad:?}");
    Ok(())
}
