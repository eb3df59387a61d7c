use epco::generators::{gen_classification, gen_regression_with_weights, ClassificationGenSpec, RegressionGenSpec};
use epco::numeric;

fn class_means(x: &epco::matrix::Matrix, labels: &[usize], cols: usize) -> [Vec<f64>; 2] {
    let mut sums = [vec![0.0; cols], vec![0.0; cols]];
    let mut counts = [0.0; 2];
    for (row, &l) in x.row_iter().zip(labels) {
        counts[l] += 1.0;
        for j in 0..cols {
            sums[l][j] += row[j];
        }
    }
    for l in 0..2 {
        sums[l].iter_mut().for_each(|v| *v /= counts[l]);
    }
    sums
}

#[test]
fn class_centres_sit_on_opposite_vertices() {
    for (k, sep) in [(2, 1.0), (3, 0.5), (5, 2.0)] {
        let spec = ClassificationGenSpec {
            samples: 20_000,
            features: k + 3,
            informative: k,
            class_sep: sep,
            label_noise: 0.0,
            ..ClassificationGenSpec::with_seed(k as u64)
        };
        let ds = gen_classification(&spec).unwrap();
        let [a, b] = class_means(ds.features(), ds.labels().unwrap(), k);
        let dist = numeric::euclidean(&a, &b);
        let expected = 2.0 * sep * (k as f64).sqrt();
        assert!((dist / expected - 1.0).abs() < 0.05, "k={k}: {dist} vs {expected}");
        // noise columns carry no class signal
        let [na, nb] = class_means(
            &ds.features().permute_columns(&(0..k + 3).rev().collect::<Vec<_>>()),
            ds.labels().unwrap(),
            3,
        );
        assert!(numeric::euclidean(&na, &nb) < 0.1);
    }
}

#[test]
fn label_noise_flips_the_requested_fraction() {
    let clean = ClassificationGenSpec {
        samples: 20_000,
        features: 4,
        label_noise: 0.0,
        ..ClassificationGenSpec::with_seed(3)
    };
    let noisy = ClassificationGenSpec {
        label_noise: 0.1,
        ..clean.clone()
    };
    let (a, b) = (gen_classification(&clean).unwrap(), gen_classification(&noisy).unwrap());
    // same stream up to the flips, so the features coincide
    assert_eq!(a.features(), b.features());
    let flipped = a
        .labels()
        .unwrap()
        .iter()
        .zip(b.labels().unwrap())
        .filter(|(x, y)| x != y)
        .count() as f64
        / 20_000.0;
    assert!((flipped - 0.1).abs() < 0.01, "{flipped}");
}

#[test]
fn regression_noise_has_the_requested_scale() {
    let spec = RegressionGenSpec {
        samples: 20_000,
        features: 6,
        informative: 2,
        noise_sigma: 2.0,
        seed: 5,
    };
    let s = gen_regression_with_weights(&spec).unwrap();
    let x = s.dataset.features();
    let residual: Vec<f64> = x
        .row_iter()
        .zip(s.dataset.values().unwrap())
        .map(|(row, y)| y - row.iter().zip(&s.weights).map(|(a, w)| a * w).sum::<f64>())
        .collect();
    let n = residual.len() as f64;
    let mean = residual.iter().sum::<f64>() / n;
    let std = (residual.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / n).sqrt();
    assert!(mean.abs() < 0.05 && (std - 2.0).abs() < 0.05, "{mean} {std}");
}
