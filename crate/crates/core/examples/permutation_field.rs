//! Build a permutation-induced matching field and test it for a toric
//! degeneration by the volume method.

use matchfields::matching_field::MatchingField;
use matchfields::pluecker::{is_toric_degeneration, ToricMethod};
use matchfields::Limits;

fn main() -> Result<(), matchfields::Error> {
    let mf = MatchingField::from_permutation(3, 6, &[1, 2, 3, 6, 5, 4])?;
    assert!(mf.is_coherent());
    let toric = is_toric_degeneration(&mf, ToricMethod::Volume, &Limits::default())?;
    println!("toric degeneration: {toric}");
    Ok(())
}
