//! Double description conversion from halfspaces to generators.
//!
//! The cone `{x : a·x ≥ 0 for all normals a}` is built by intersecting the
//! whole space with one halfspace at a time. The current cone is kept as a
//! lineality basis plus a set of extreme rays of the pointed quotient. Each
//! ray carries the set of processed constraints it makes tight, which drives
//! the combinatorial adjacency test.

use std::cmp::Ordering;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use super::{Rational, Vector};
use crate::error::{Error, Result};

/// Largest ambient dimension accepted by [`dd_convert`].
pub const DEFAULT_DIMENSION_CAP: usize = 16;

#[derive(Debug, Clone)]
struct Ray {
    v: Vector,
    tight: Vec<u64>,
}

fn bit_set(bits: &mut Vec<u64>, k: usize) {
    let word = k / 64;
    if bits.len() <= word {
        bits.resize(word + 1, 0);
    }
    bits[word] |= 1 << (k % 64);
}

fn bits_and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bits_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().enumerate().all(|(i, &x)| x & !b.get(i).copied().unwrap_or(0) == 0)
}

fn bits_count(a: &[u64]) -> usize {
    a.iter().map(|x| x.count_ones() as usize).sum()
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn axpy(y: &mut [Rational], alpha: &Rational, x: &[Rational]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi -= alpha * xi;
    }
}

/// Rescale by a positive factor to the primitive integer vector on the same ray.
pub(crate) fn primitive(v: &[Rational]) -> Vector {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| BigRational::from_integer(x / &gcd)).collect()
}

pub(crate) fn lex_cmp(a: &[Rational], b: &[Rational]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.cmp(y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or_else(|| a.len().cmp(&b.len()))
}

/// Canonical form of a family of directions: primitive, nonzero, sorted, deduplicated.
pub(crate) fn canonical_family(vectors: &[Vector]) -> Vec<Vector> {
    let mut out: Vec<Vector> =
        vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).map(|v| primitive(v)).collect();
    out.sort_by(|a, b| lex_cmp(a, b));
    out.dedup();
    out
}

/// Irredundant generators of `{x ∈ ℝ^d : a·x ≥ 0 for every normal a}`.
///
/// Lineality directions `l` are reported as the pair `l, -l`. The output is
/// sorted lexicographically with primitive integer entries, so it does not
/// depend on the order in which the normals were supplied. An empty normal
/// list describes the whole space.
pub fn dd_convert(normals: &[Vector], d: usize) -> Result<Vec<Vector>> {
    dd_convert_with_cap(normals, d, DEFAULT_DIMENSION_CAP)
}

pub fn dd_convert_with_cap(normals: &[Vector], d: usize, cap: usize) -> Result<Vec<Vector>> {
    if d > cap {
        return Err(Error::Capacity { dim: d, cap });
    }
    if let Some(bad) = normals.iter().find(|a| a.len() != d) {
        return Err(Error::Dimension(format!("normal of length {} in dimension {d}", bad.len())));
    }
    let normals = canonical_family(normals);

    let mut lineality: Vec<Vector> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in normals.iter().enumerate() {
        let pivot = lineality.iter().position(|l| !dot(a, l).is_zero());
        if let Some(p) = pivot {
            let mut l0 = lineality.remove(p);
            let mut s0 = dot(a, &l0);
            if s0.is_negative() {
                l0.iter_mut().for_each(|x| *x = -x.clone());
                s0 = -s0;
            }
            for l in lineality.iter_mut() {
                let coef = dot(a, l) / &s0;
                axpy(l, &coef, &l0);
            }
            for r in rays.iter_mut() {
                let coef = dot(a, &r.v) / &s0;
                axpy(&mut r.v, &coef, &l0);
                bit_set(&mut r.tight, k);
            }
            // l0 lies in the kernel of every earlier constraint.
            let mut tight = Vec::new();
            for j in 0..k {
                bit_set(&mut tight, j);
            }
            rays.push(Ray { v: l0, tight });
            continue;
        }

        let values: Vec<Rational> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for (i, s) in values.iter().enumerate() {
            match s.cmp(&Rational::zero()) {
                Ordering::Greater => {
                    positive.push(i);
                    next.push(rays[i].clone());
                }
                Ordering::Equal => {
                    let mut r = rays[i].clone();
                    bit_set(&mut r.tight, k);
                    next.push(r);
                }
                Ordering::Less => negative.push(i),
            }
        }
        let quotient_dim = d - lineality.len();
        for &p in &positive {
            for &q in &negative {
                let common = bits_and(&rays[p].tight, &rays[q].tight);
                if quotient_dim >= 2 && bits_count(&common) + 2 < quotient_dim {
                    continue;
                }
                let adjacent =
                    rays.iter().enumerate().all(|(i, r)| i == p || i == q || !bits_subset(&common, &r.tight));
                if !adjacent {
                    continue;
                }
                // values[p] > 0 > values[q]; the combination is tight on a.
                let v: Vector = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(xq, xp)| &values[p] * xq - &values[q] * xp)
                    .collect();
                let mut tight = common;
                bit_set(&mut tight, k);
                next.push(Ray { v: primitive(&v), tight });
            }
        }
        rays = next;
    }

    let mut generators: Vec<Vector> = rays.into_iter().map(|r| r.v).collect();
    for l in lineality {
        let neg: Vector = l.iter().map(|x| -x.clone()).collect();
        generators.push(l);
        generators.push(neg);
    }
    Ok(canonical_family(&generators))
}
