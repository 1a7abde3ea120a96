//! `δ_β = [β, ·]` for Poisson and non-Poisson bivectors, and the square
//! relating it to the de Rham differential through `β̃`.

use gcsym::gcs::{beta_tilde_map, poisson_delta};
use gcsym::suite::{commuting_square, delta_squared_residual, non_poisson_example};
use gcsym::symkernel::{ChartBuilder, DifferentialForm, Polyvector};

fn main() -> gcsym::Result<()> {
    let c = ChartBuilder::new(&["z1", "z2"]).build()?;
    let z1 = c.var("z1")?;
    let beta = Polyvector::gen(&c, "z1")?.wedge(&Polyvector::gen(&c, "z2")?)?.scale(&z1);
    println!("β = {beta}, [β,β] = {}", beta.schouten(&beta)?);

    let a = DifferentialForm::scalar(&c, z1.mul(&c.var("z2")?));
    println!("β̃(a) = {}", beta_tilde_map(&beta, &a)?);
    println!("δ_β β̃(a) = {}", poisson_delta(&beta, &beta_tilde_map(&beta, &a)?)?);
    println!("square commutes: {}", commuting_square(&beta, &a)?);

    let bad = non_poisson_example();
    println!("β' = {bad}, [β',β'] = {}", bad.schouten(&bad)?);
    if let Some((input, r)) = delta_squared_residual(&bad)? {
        println!("δ_β'² ({input}) = {r}");
    }
    Ok(())
}
