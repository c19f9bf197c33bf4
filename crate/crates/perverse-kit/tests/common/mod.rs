//! Shared randomized generators for the integration suites. Everything is
//! seeded: set PERVERSE_KIT_SEED to reproduce a particular corpus. The
//! seed only affects which random cases are tried, never any verdict.

// Each integration test binary compiles this module separately and uses a
// different subset of it.
#![allow(dead_code)]

use perverse_kit::complexes::{ChainComplex, ChainMap};
use perverse_kit::linalg::{rat, RationalMatrix};
use perverse_kit::localsys::TorusLocalSystem;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;

pub fn seeded_rng() -> StdRng {
    let seed = std::env::var("PERVERSE_KIT_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(42);
    StdRng::seed_from_u64(seed)
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rat(rng.gen_range(-bound..=bound)));
        }
    }
    m
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> RationalMatrix {
    loop {
        let m = random_matrix(rng, n, n, 3);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Commuting invertible pair built as polynomials in one random matrix.
pub fn random_commuting_pair<R: Rng>(rng: &mut R, max_dim: usize) -> TorusLocalSystem {
    let n = rng.gen_range(1..=max_dim);
    loop {
        let a = random_matrix(rng, n, n, 2);
        let poly_in = |rng: &mut R, a: &RationalMatrix| {
            let mut acc = RationalMatrix::identity(n).scale(&rat(rng.gen_range(-2..=2)));
            let mut power = RationalMatrix::identity(n);
            for _ in 0..2 {
                power = power.mul(a).expect("square");
                let coeff = rat(rng.gen_range(-2..=2));
                acc = acc.add(&power.scale(&coeff)).expect("square");
            }
            acc
        };
        let t1 = poly_in(rng, &a);
        let t2 = poly_in(rng, &a);
        if let Ok(ls) = TorusLocalSystem::new(t1, t2) {
            return ls;
        }
    }
}

/// Arbitrary bounded complex: a normal form with chosen boundary ranks,
/// conjugated by random invertible changes of basis in every degree.
pub fn random_complex<R: Rng>(
    rng: &mut R,
    max_len: usize,
    max_dim: usize,
) -> ChainComplex {
    let len = rng.gen_range(1..=max_len);
    let lo = rng.gen_range(-3..=0);
    let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_dim)).collect();
    // Boundary ranks compatible with d o d = 0.
    let mut ranks = vec![0usize; len.saturating_sub(1)];
    let mut used_below = 0usize;
    for i in 0..ranks.len() {
        let cap = dims[i].saturating_sub(used_below).min(dims[i + 1]);
        ranks[i] = if cap == 0 { 0 } else { rng.gen_range(0..=cap) };
        used_below = ranks[i];
    }
    // Normal form: the last rank[i] coordinates of degree i map to the
    // first rank[i] coordinates of degree i+1.
    let mut diffs = Vec::new();
    for i in 0..ranks.len() {
        let mut d = RationalMatrix::zeros(dims[i + 1], dims[i]);
        for k in 0..ranks[i] {
            d.set(k, dims[i] - ranks[i] + k, rat(1));
        }
        diffs.push(d);
    }
    let normal = ChainComplex::new(lo, dims.clone(), diffs).expect("normal form is a complex");
    conjugate(rng, &normal)
}

/// Conjugates a complex degreewise by random invertible matrices.
pub fn conjugate<R: Rng>(rng: &mut R, c: &ChainComplex) -> ChainComplex {
    let len = c.dims().len();
    let changes: Vec<RationalMatrix> = (0..len)
        .map(|i| random_invertible(rng, c.dims()[i]))
        .collect();
    let diffs: Vec<RationalMatrix> = (0..len.saturating_sub(1))
        .map(|i| {
            changes[i + 1]
                .mul(&c.diff_at(c.lo() + i as i64))
                .expect("shape")
                .mul(&changes[i].inverse().expect("invertible"))
                .expect("shape")
        })
        .collect();
    ChainComplex::new(c.lo(), c.dims().to_vec(), diffs).expect("conjugate is a complex")
}

/// Random chain map between two random complexes, sampled from the exact
/// solution space of the commutation constraints.
pub fn random_chain_map<R: Rng>(rng: &mut R, max_len: usize, max_dim: usize) -> ChainMap {
    let a = random_complex(rng, max_len, max_dim);
    let b = random_complex(rng, max_len, max_dim);
    let lo = a.lo().min(b.lo());
    let hi = a.hi().max(b.hi());
    // Unknowns: entries of every component f_k (shape b_k x a_k).
    let degrees: Vec<i64> = (lo..=hi).collect();
    let mut offsets = BTreeMap::new();
    let mut total = 0usize;
    for &k in &degrees {
        offsets.insert(k, total);
        total += b.dim_at(k) * a.dim_at(k);
    }
    // One constraint row per entry of d_B f_k - f_{k+1} d_A at each degree.
    let mut rows: Vec<Vec<perverse_kit::Rational>> = Vec::new();
    for &k in &degrees[..degrees.len().saturating_sub(1)] {
        let db = b.diff_at(k);
        let da = a.diff_at(k);
        for r in 0..b.dim_at(k + 1) {
            for c in 0..a.dim_at(k) {
                let mut row = vec![rat(0); total];
                // (d_B f_k)[r][c] = sum_s d_B[r][s] f_k[s][c]
                for s in 0..b.dim_at(k) {
                    let idx = offsets[&k] + s * a.dim_at(k) + c;
                    row[idx] = row[idx].clone() + db.get(r, s);
                }
                // (f_{k+1} d_A)[r][c] = sum_s f_{k+1}[r][s] d_A[s][c]
                for s in 0..a.dim_at(k + 1) {
                    let idx = offsets[&(k + 1)] + r * a.dim_at(k + 1) + s;
                    row[idx] = row[idx].clone() - da.get(s, c);
                }
                rows.push(row);
            }
        }
    }
    let solution = if total == 0 {
        RationalMatrix::zeros(0, 0)
    } else if rows.is_empty() {
        RationalMatrix::identity(total)
    } else {
        RationalMatrix::from_rows(rows).expect("rectangular").kernel()
    };
    // Random combination of the solution basis.
    let mut flat = vec![rat(0); total];
    for j in 0..solution.cols() {
        let coeff = rat(rng.gen_range(-2..=2));
        for (i, entry) in flat.iter_mut().enumerate() {
            *entry = entry.clone() + solution.get(i, j) * &coeff;
        }
    }
    let mut comps = BTreeMap::new();
    for &k in &degrees {
        let (rows_k, cols_k) = (b.dim_at(k), a.dim_at(k));
        if rows_k * cols_k == 0 {
            continue;
        }
        let start = offsets[&k];
        let entries = flat[start..start + rows_k * cols_k].to_vec();
        comps.insert(k, RationalMatrix::new(rows_k, cols_k, entries).expect("shape"));
    }
    ChainMap::new(a, b, comps).expect("sampled from the commutation constraints")
}
