//! `φ = z1 + dz1∧dz2`: purity, pairing, type change across the divisor and
//! an integrability witness.

use gcsym::gcs::{integrability_witness, purity_report_dim4, type_number};
use gcsym::symkernel::{ChartBuilder, DifferentialForm, Point};

fn main() -> gcsym::Result<()> {
    let c = ChartBuilder::new(&["z1", "z2"]).build()?;
    let phi = DifferentialForm::scalar(&c, c.var("z1")?)
        .add(&DifferentialForm::gen(&c, "z1")?.wedge(&DifferentialForm::gen(&c, "z2")?)?)?;
    let report = purity_report_dim4(&phi, &Point::new().with("z1", 1).with("z2", 3))?;
    println!("φ = {phi}");
    println!("pure: {}, ⟨φ,φ̄⟩ = {}", report.is_pure, report.pairing_value.display(&c));
    for z1 in [0, 1] {
        println!("type at z1 = {z1}: {}", type_number(&phi, &Point::new().with("z1", z1).with("z2", 0))?);
    }
    match integrability_witness(&phi, 1)? {
        Some(e) => println!("dφ = e·φ with e = {e}"),
        None => println!("no witness at degree 1"),
    }
    Ok(())
}
