//! Fixtures shared by the criterion benches.

use helly_core::generators::{gen_construction_colorful, gen_random_classes};
use helly_core::scalar::ratio;
use helly_core::{ColorClasses, ConstructionSpec, SetModel};

pub fn construction(d: usize, n: usize) -> ColorClasses {
    let spec = ConstructionSpec::new(d, n, ratio(1, 2), 7);
    gen_construction_colorful(&spec).expect("valid construction spec")
}

pub fn random(d: usize, size: usize, seed: u64) -> ColorClasses {
    gen_random_classes(d, &vec![size; d + 1], SetModel::Mixed, seed)
        .expect("valid random class spec")
}
