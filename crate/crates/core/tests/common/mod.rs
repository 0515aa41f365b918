//! Brute-force helpers shared by the integration tests.
#![allow(dead_code)]

use latmem::exact::int;
use latmem::{IntVector, RatVector, Rational};
use num_traits::Signed;

/// Every integer point of the box [-r, r]ⁿ.
pub fn box_points(n: usize, r: i64) -> Vec<IntVector> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: IntVector| {
                (-r..=r).map(move |x| {
                    let mut q = p.clone();
                    q.push(int(x));
                    q
                })
            })
            .collect();
    }
    out
}

/// Integer points with ‖z‖₁ ≤ r.
pub fn l1_ball_points(n: usize, r: i64) -> Vec<IntVector> {
    box_points(n, r)
        .into_iter()
        .filter(|z| z.iter().map(|x| x.abs()).sum::<latmem::Integer>() <= int(r))
        .collect()
}

pub fn as_rat(z: &[latmem::Integer]) -> RatVector {
    z.iter()
        .map(|x| Rational::from_integer(x.clone()))
        .collect()
}
