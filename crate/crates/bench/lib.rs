//! Fixtures shared by the benchmarks.

use domaintile_core::{performance_from_confusion, ConfusionInput, Domain, DomainSet};

/// The three-domain example set with equal domain weights.
pub fn example_domains() -> DomainSet {
    let rows = [
        ("d1", [0.02, 0.12, 0.01, 0.85]),
        ("d2", [0.68, 0.08, 0.10, 0.14]),
        ("d3", [0.41, 0.19, 0.10, 0.30]),
    ];
    DomainSet::new(
        rows.iter()
            .map(|(id, m)| {
                let c = ConfusionInput::new(m[0], m[1], m[2], m[3]);
                Domain::new(*id, 1.0, performance_from_confusion(&c).unwrap())
            })
            .collect(),
    )
    .unwrap()
}

/// `k` synthetic domains with varied confusion matrices.
pub fn synthetic_domains(k: usize) -> DomainSet {
    DomainSet::new(
        (0..k)
            .map(|i| {
                let x = i as f64;
                let c = ConfusionInput::new(
                    1.0 + x,
                    2.0 + (x * 0.7) % 3.0,
                    1.0 + (x * 1.3) % 2.0,
                    3.0 + x * 0.5,
                );
                Domain::new(
                    format!("d{i}"),
                    1.0 + (i % 3) as f64,
                    performance_from_confusion(&c).unwrap(),
                )
            })
            .collect(),
    )
    .unwrap()
}
