//! Truncated Borcherds-Kac-Weyl characters.
//!
//! Weights are written as `λ + ρ - γ` with `γ` in the root lattice, and
//! `ρ(h_i) = 1` for every index.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::time::Instant;

use serde::Serialize;

use super::module::{build_highest_weight_module, Sector};
use crate::cartan::{BorcherdsCartanDatum, RootVector};
use crate::error::{Error, Result};
use crate::presentation::{Presentation, TypeTable};
use crate::qscalar::QScalar;
use crate::report::CheckRecord;

/// Multiplicities of `λ - β` for drops `β` of height at most `height`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterSeries {
    pub terms: BTreeMap<RootVector, i64>,
    pub height: usize,
}

impl CharacterSeries {
    pub fn multiplicity(&self, beta: &RootVector) -> i64 {
        self.terms.get(beta).copied().unwrap_or(0)
    }

    pub fn table(&self) -> String {
        let mut rows: Vec<(i64, &RootVector, i64)> =
            self.terms.iter().map(|(b, c)| (b.height().unwrap_or(0), b, *c)).collect();
        rows.sort();
        rows.iter().map(|(h, b, c)| format!("{h:>3}  {b}  {c}\n")).collect()
    }
}

/// A Weyl group element by its action: `w(α_j) = Σ_k cols[j][k] α_k`, and
/// `base - w(base) = shift` for `base = λ + ρ` and `base = ρ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct WeylElement {
    cols: Vec<Vec<i64>>,
    shift_lambda: Vec<i64>,
    shift_rho: Vec<i64>,
}

fn pairing(d: &BorcherdsCartanDatum, x: &[i64], i: usize) -> i64 {
    (0..d.rank()).map(|j| d.entry(i, j) * x[j]).sum()
}

impl WeylElement {
    fn identity(n: usize) -> Self {
        WeylElement {
            cols: (0..n).map(|j| RootVector::simple(n, j).0).collect(),
            shift_lambda: vec![0; n],
            shift_rho: vec![0; n],
        }
    }

    /// `r_i ∘ self`.
    fn reflect(&self, d: &BorcherdsCartanDatum, lam: &[i64], i: usize) -> Self {
        let mut out = self.clone();
        for col in &mut out.cols {
            col[i] -= pairing(d, col, i);
        }
        out.shift_lambda[i] += lam[i] + 1 - pairing(d, &self.shift_lambda, i);
        out.shift_rho[i] += 1 - pairing(d, &self.shift_rho, i);
        out
    }

    fn apply(&self, x: &[i64]) -> Vec<i64> {
        let n = x.len();
        let mut out = vec![0; n];
        for (j, &c) in x.iter().enumerate() {
            for (o, &v) in out.iter_mut().zip(&self.cols[j]) {
                *o += c * v;
            }
        }
        out
    }
}

/// Elements of the Weyl group of length at most `max_len`, with lengths.
fn weyl_elements(d: &BorcherdsCartanDatum, lam: &[i64], max_len: usize) -> Vec<(WeylElement, usize)> {
    let n = d.rank();
    let real: Vec<usize> = (0..n).filter(|&i| d.is_real(i)).collect();
    let id = WeylElement::identity(n);
    let mut seen: HashSet<WeylElement> = HashSet::from([id.clone()]);
    let mut out = vec![(id.clone(), 0)];
    let mut queue = VecDeque::from([(id, 0usize)]);
    while let Some((w, len)) = queue.pop_front() {
        if len == max_len {
            continue;
        }
        for &i in &real {
            let x = w.reflect(d, lam, i);
            if seen.insert(x.clone()) {
                out.push((x.clone(), len + 1));
                queue.push_back((x, len + 1));
            }
        }
    }
    out
}

/// Subsets of imaginary indices, pairwise orthogonal, and orthogonal to λ.
fn admissible_sets(d: &BorcherdsCartanDatum, lam: &[i64]) -> Vec<Vec<usize>> {
    let im: Vec<usize> = (0..d.rank()).filter(|&i| !d.is_real(i) && lam[i] == 0).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << im.len() {
        let f: Vec<usize> = im.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i).collect();
        let ok = f.iter().all(|&i| f.iter().all(|&j| i == j || d.entry(i, j) == 0));
        if ok {
            out.push(f);
        }
    }
    out
}

fn height(v: &[i64]) -> i64 {
    v.iter().sum()
}

/// Alternating sum as a series in the drops, restricted to height ≤ `n`.
/// Errors when an element of length `max_len + 1` reaches height ≤ `n`.
fn alternating_sum(d: &BorcherdsCartanDatum, lam: &[i64], n: usize, max_len: usize, use_lambda: bool) -> Result<BTreeMap<Vec<i64>, i64>> {
    let zero = vec![0; d.rank()];
    let weight = if use_lambda { lam } else { &zero[..] };
    let sets = admissible_sets(d, weight);
    let mut out: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (w, len) in weyl_elements(d, lam, max_len + 1) {
        let shift = if use_lambda { &w.shift_lambda } else { &w.shift_rho };
        for f in &sets {
            let mut s = vec![0; d.rank()];
            for &i in f {
                s[i] += 1;
            }
            let moved = w.apply(&s);
            let drop: Vec<i64> = shift.iter().zip(&moved).map(|(a, b)| a + b).collect();
            if drop.iter().any(|&c| c < 0) || height(&drop) > n as i64 {
                continue;
            }
            if len > max_len {
                return Err(Error::TruncationTooTight(format!(
                    "a Weyl element of length {len} contributes at drop {drop:?}; raise the length bound above {max_len}"
                )));
            }
            let sign = if (len + f.len()) % 2 == 0 { 1 } else { -1 };
            *out.entry(drop).or_insert(0) += sign;
        }
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

/// All nonnegative integer vectors of length `n` with sum at most `h`, by height.
fn lattice_points(n: usize, h: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0; n]];
    let mut frontier = vec![vec![0i64; n]];
    for _ in 0..h {
        let mut next = Vec::new();
        for v in &frontier {
            let last = v.iter().rposition(|&c| c > 0).unwrap_or(0);
            for i in last..n {
                let mut x = v.clone();
                x[i] += 1;
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Multiplicities of the irreducible character with highest weight given by
/// `lam[i] = λ(h_i) ≥ 0`, for drops of height ≤ `n`, using Weyl elements
/// of length ≤ `max_len`.
pub fn truncated_character(d: &BorcherdsCartanDatum, lam: &[i64], n: usize, max_len: usize) -> Result<CharacterSeries> {
    if lam.len() != d.rank() {
        return Err(Error::IndexOutOfRange { index: lam.len(), rank: d.rank() });
    }
    if let Some(i) = lam.iter().position(|&x| x < 0) {
        return Err(Error::NotApplicable(format!("weight is not dominant at index {i}")));
    }
    let num = alternating_sum(d, lam, n, max_len, true)?;
    let den = alternating_sum(d, lam, n, max_len, false)?;
    debug_assert_eq!(den.get(&vec![0; d.rank()]), Some(&1));
    let mut ch: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for g in lattice_points(d.rank(), n) {
        let mut c = num.get(&g).copied().unwrap_or(0);
        for (delta, dc) in &den {
            if height(delta) == 0 || delta.iter().zip(&g).any(|(a, b)| a > b) {
                continue;
            }
            let rest: Vec<i64> = g.iter().zip(delta).map(|(a, b)| a - b).collect();
            c -= dc * ch.get(&rest).copied().unwrap_or(0);
        }
        ch.insert(g, c);
    }
    Ok(CharacterSeries {
        terms: ch.into_iter().filter(|(_, c)| *c != 0).map(|(g, c)| (RootVector(g), c)).collect(),
        height: n,
    })
}

/// Compares character multiplicities with weight-space dimensions of the
/// simple module with `K_i`-eigenvalues `q^{s_i λ(h_i)}`.
pub fn character_module_crosscheck(d: &BorcherdsCartanDatum, lam: &[i64], n: usize, max_len: usize) -> Result<Vec<CheckRecord>> {
    let start = Instant::now();
    let ch = truncated_character(d, lam, n, max_len)?;
    let p = Presentation::build(d, &TypeTable::all_one(d.rank()), 2)?;
    let eig: Vec<QScalar> = lam.iter().enumerate().map(|(i, &x)| QScalar::q_pow(d.symmetrizer(i) * x)).collect();
    let md = build_highest_weight_module(&p, &eig, Sector::Unit, QScalar::one(), n)?;
    let dims = md.weight_multiplicities();
    let mut drops: Vec<&RootVector> = ch.terms.keys().chain(dims.keys()).collect();
    drops.sort();
    drops.dedup();
    let mut out = Vec::new();
    for b in drops {
        let c = ch.multiplicity(b);
        let m = dims.get(b).copied().unwrap_or(0) as i64;
        out.push(
            CheckRecord::outcome(
                format!("character:{lam:?}:{b}"),
                "Borcherds-Kac-Weyl character vs module",
                c == m,
                true,
                (c != m).then(|| format!("character {c}, module {m}")),
            )
            .timed(start),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::validate_datum;

    #[test]
    fn sl2_string() {
        let d = validate_datum(&[vec![2]], &[1]).unwrap();
        let ch = truncated_character(&d, &[2], 5, 6).unwrap();
        let expect: BTreeMap<RootVector, i64> = (0..=2).map(|k| (RootVector(vec![k]), 1)).collect();
        assert_eq!(ch.terms, expect);
    }

    #[test]
    fn trivial_weight() {
        for (_, d) in crate::cartan::gallery() {
            let ch = truncated_character(&d, &vec![0; d.rank()], 4, 8).unwrap();
            assert_eq!(ch.terms, BTreeMap::from([(RootVector::zero(d.rank()), 1)]));
        }
    }

    #[test]
    fn imaginary_free() {
        let d = validate_datum(&[vec![-2]], &[1]).unwrap();
        let ch = truncated_character(&d, &[1], 6, 2).unwrap();
        assert_eq!(ch.terms.len(), 7);
        assert!(ch.terms.values().all(|&c| c == 1));
    }

    #[test]
    fn too_tight() {
        let d = validate_datum(&[vec![2]], &[1]).unwrap();
        assert!(matches!(truncated_character(&d, &[2], 5, 0), Err(Error::TruncationTooTight(_))));
    }
}
