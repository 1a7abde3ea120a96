//! Clifford relation `e·e·φ = ⟨e,e⟩φ` and Courant antisymmetry on a random
//! generalized vector.

use gcsym::suite::{kernel_chart, random_form, random_genvec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gcsym::Result<()> {
    let chart = kernel_chart();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let e = random_genvec(&chart, &mut rng);
    let phi = random_form(&chart, &mut rng, None, 3);
    let lhs = e.clifford(&e.clifford(&phi)?)?;
    let rhs = phi.scale(&e.inner_metric(&e)?);
    println!("e        = {e}");
    println!("φ        = {phi}");
    println!("⟨e,e⟩    = {}", e.inner_metric(&e)?.display(&chart));
    println!("e·e·φ = ⟨e,e⟩φ: {}", lhs == rhs);
    let f = random_genvec(&chart, &mut rng);
    println!("[e,f] + [f,e] = 0: {}", e.courant(&f)?.add(&f.courant(&e)?)?.is_zero());
    Ok(())
}
