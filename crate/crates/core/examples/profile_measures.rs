// How each classification measure reacts as the generator's class
// separation shrinks.
//
// cargo run --example profile_measures

use epco::generators::{gen_classification, ClassificationGenSpec};
use epco::{measures, ComplexityProfile, MeasureId};

pub const SEPARATIONS: [f64; 4] = [5.0, 2.0, 1.0, 0.5];

pub fn run_with(samples: usize, seed: u64) -> epco::Result<Vec<ComplexityProfile>> {
    let profiles = SEPARATIONS
        .iter()
        .map(|&class_sep| {
            let spec = ClassificationGenSpec {
                samples,
                class_sep,
                ..ClassificationGenSpec::with_seed(seed)
            };
            measures::profile(&gen_classification(&spec)?, seed)
        })
        .collect::<epco::Result<Vec<_>>>()?;

    print!("{:<8}", "sep");
    for sep in SEPARATIONS {
        print!("{sep:>8.1}");
    }
    println!();
    for (k, id) in MeasureId::CLASSIFICATION.iter().enumerate() {
        print!("{:<8}", id.name());
        for p in &profiles {
            print!("{:>8.3}", p.values()[k]);
        }
        println!();
    }
    Ok(profiles)
}

pub fn run_example() -> epco::Result<Vec<ComplexityProfile>> {
    run_with(350, 0)
}

#[allow(dead_code)]
fn main() -> epco::Result<()> {
    run_example().map(|_| ())
}
