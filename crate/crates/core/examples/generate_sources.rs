// Draw the two default source datasets and print their complexity
// profiles.
//
// cargo run --example generate_sources -- [seed]

use epco::generators::{gen_classification, gen_regression, ClassificationGenSpec, RegressionGenSpec};
use epco::{measures, ComplexityProfile, Dataset};

fn describe(name: &str, ds: &Dataset, profile: &ComplexityProfile) {
    println!("{name}: {} samples x {} features", ds.n_samples(), ds.n_features());
    for (id, value) in profile.entries() {
        println!("  {:<8} {value:.4}", id.name());
    }
}

pub fn run_with(seed: u64) -> epco::Result<[ComplexityProfile; 2]> {
    let cls = gen_classification(&ClassificationGenSpec::with_seed(seed))?;
    let reg = gen_regression(&RegressionGenSpec::with_seed(seed))?;
    let cls_profile = measures::profile(&cls, seed)?;
    let reg_profile = measures::profile(&reg, seed)?;
    describe("classification", &cls, &cls_profile);
    describe("regression", &reg, &reg_profile);
    Ok([cls_profile, reg_profile])
}

pub fn run_example() -> epco::Result<[ComplexityProfile; 2]> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    run_with(seed)
}

#[allow(dead_code)]
fn main() -> epco::Result<()> {
    run_example().map(|_| ())
}
