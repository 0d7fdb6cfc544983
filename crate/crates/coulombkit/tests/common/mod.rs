//! Quiver builders and random-instance generators shared by the integration
//! test suites.

#![allow(dead_code)]

use std::path::{Path, PathBuf};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use coulombkit::monopole::Coweight;
use coulombkit::quiver::{DimVector, GaugeTheory, GroupConvention, Quiver};

pub fn path_quiver(n: usize) -> Quiver {
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let edges: Vec<(String, String)> =
        (1..n).map(|i| (i.to_string(), (i + 1).to_string())).collect();
    Quiver::new(vertices, &edges).unwrap()
}

pub fn d4_quiver() -> Quiver {
    Quiver::new(
        vec!["1".into(), "c".into(), "3".into(), "4".into()],
        &[("1".into(), "c".into()), ("c".into(), "3".into()), ("c".into(), "4".into())],
    )
    .unwrap()
}

pub fn jordan_quiver() -> Quiver {
    Quiver::new(vec!["x".into()], &[("x".into(), "x".into())]).unwrap()
}

pub fn affine_a1_quiver() -> Quiver {
    Quiver::new(
        vec!["0".into(), "1".into()],
        &[("0".into(), "1".into()), ("0".into(), "1".into())],
    )
    .unwrap()
}

pub fn affine_a2_quiver() -> Quiver {
    Quiver::new(
        vec!["0".into(), "1".into(), "2".into()],
        &[
            ("0".into(), "1".into()),
            ("1".into(), "2".into()),
            ("2".into(), "0".into()),
        ],
    )
    .unwrap()
}

pub fn mod_center(quiver: Quiver, v: Vec<u32>) -> GaugeTheory {
    let n = quiver.n_vertices();
    GaugeTheory::quiver(quiver, DimVector(v), DimVector::zero(n), GroupConvention::ProdGlModCenter)
        .unwrap()
}

pub fn framed(quiver: Quiver, v: Vec<u32>, w: Vec<u32>) -> GaugeTheory {
    GaugeTheory::quiver(quiver, DimVector(v), DimVector(w), GroupConvention::ProdGl).unwrap()
}

/// A random theory from a small menu of shapes: framed paths, the D4 star, a
/// loop, and the doubled edge, in both group conventions.
pub fn random_theory(rng: &mut ChaCha8Rng) -> GaugeTheory {
    let quiver = match rng.gen_range(0..5u8) {
        0 => path_quiver(2),
        1 => path_quiver(3),
        2 => d4_quiver(),
        3 => jordan_quiver(),
        _ => affine_a1_quiver(),
    };
    let n = quiver.n_vertices();
    if rng.gen_bool(0.5) {
        // Central quotient: no framing, all entries positive so the support
        // stays connected.
        let v: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=3u32)).collect();
        mod_center(quiver, v)
    } else {
        let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=3u32)).collect();
        let w: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2u32)).collect();
        framed(quiver, v, w)
    }
}

pub fn random_charge(rng: &mut ChaCha8Rng, theory: &GaugeTheory) -> Coweight {
    let (_, v, _) = theory.as_quiver("test").unwrap();
    Coweight(
        v.0.iter()
            .map(|&d| (0..d).map(|_| rng.gen_range(-5..=5i64)).collect())
            .collect(),
    )
}

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// All nonzero vectors 0 < v <= bound whose support is connected on the
/// quiver, in odometer order.
pub fn connected_box(quiver: &Quiver, bound: &[u32]) -> Vec<Vec<u32>> {
    let n = quiver.n_vertices();
    assert_eq!(bound.len(), n);
    let mut out = Vec::new();
    let mut v = vec![0u32; n];
    'outer: loop {
        let mut i = 0;
        loop {
            if i == n {
                break 'outer;
            }
            v[i] += 1;
            if v[i] <= bound[i] {
                break;
            }
            v[i] = 0;
            i += 1;
        }
        let support: Vec<bool> = v.iter().map(|&x| x > 0).collect();
        if quiver.is_connected_on(&support) {
            out.push(v.clone());
        }
    }
    out
}
