//! Rank bookkeeping for Hirzebruch surfaces `F_e`.

use gcsym::surfaces::{hirzebruch_consistency, HirzebruchOutcome};

fn main() -> gcsym::Result<()> {
    for e in 1..=8 {
        match hirzebruch_consistency(e)? {
            HirzebruchOutcome::Consistent { rank_delta0, rank_delta1, h2, .. } => {
                println!("e = {e}: rank δ⁰ = {rank_delta0}, rank δ¹ = {rank_delta1}, H² = {h2}")
            }
            HirzebruchOutcome::Inconsistent { row, certificate } => println!("e = {e}: row {row} {certificate}"),
        }
    }
    Ok(())
}
