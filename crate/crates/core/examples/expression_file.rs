//! Parses an expression file, prints it canonically and parses it back.

use gcsym::symkernel::json::{parse_file, print_file};

fn main() -> gcsym::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/log_spinor.json").into());
    let text = std::fs::read_to_string(&path)?;
    let (chart, value) = parse_file(&text)?;
    let canonical = print_file(&chart, &value);
    print!("{canonical}");
    let (chart2, again) = parse_file(&canonical)?;
    println!("round trip: {}", print_file(&chart2, &again) == canonical);
    Ok(())
}
