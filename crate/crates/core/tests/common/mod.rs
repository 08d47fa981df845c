#![allow(dead_code)]

use proptest::prelude::*;
use xygp::qmat::{ComplexMatrix, C64};

/// Random Hermitian `n × n` matrix with entries in `[-scale, scale]`.
pub fn hermitian(n: usize, scale: f64) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-scale..scale, -scale..scale), n * n).prop_map(move |raw| {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let (re, im) = raw[i * n + j];
                if i == j {
                    m[(i, i)] = C64::new(re, 0.0);
                } else {
                    m[(i, j)] = C64::new(re, im);
                    m[(j, i)] = C64::new(re, -im);
                }
            }
        }
        m
    })
}

pub fn deg(x: f64) -> f64 {
    x.to_degrees()
}
