//! The spinor on `D² × T²` for one gluing map, its pairing factor and the
//! closedness checks.

use gcsym::scalar::rat;
use gcsym::surgery::{condition_shift, pairing_factor, phi_t, stripped_is_closed, surgery_chart, SurgeryData};

fn main() -> gcsym::Result<()> {
    let d = SurgeryData::new(3, 2, 1, 1, rat(3, 2))?;
    let (l, s) = condition_shift(&d)?;
    println!("{d} shifted by l = {l} to {s}");
    println!("φ_T = {}", phi_t(&s)?);
    let pf = pairing_factor(&s)?;
    println!("⟨φ_T, φ̄_T⟩ top coefficient = {}", pf.display(&surgery_chart()));
    println!("closed at s = 0, 1 and for symbolic s: {} {} {}",
        stripped_is_closed(&s, Some(rat(0, 1)))?,
        stripped_is_closed(&s, Some(rat(1, 1)))?,
        stripped_is_closed(&s, None)?);
    Ok(())
}
