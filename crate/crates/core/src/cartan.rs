//! Borcherds-Cartan data: validation, real/imaginary index split, the
//! symmetric bilinear form on simple roots, and root-lattice vectors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported index set.
pub const MAX_RANK: usize = 64;

/// A single failed condition found by [`validate_datum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DatumViolation {
    NonSquare,
    DiagonalViolation(usize),
    SignViolation(usize, usize),
    ZeroPairViolation(usize, usize),
    NotSymmetrizable(usize, usize),
    NonPositiveSymmetrizer(usize),
}

impl fmt::Display for DatumViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DatumViolation::NonSquare => write!(f, "NonSquare"),
            DatumViolation::DiagonalViolation(i) => write!(f, "DiagonalViolation({i})"),
            DatumViolation::SignViolation(i, j) => write!(f, "SignViolation({i},{j})"),
            DatumViolation::ZeroPairViolation(i, j) => write!(f, "ZeroPairViolation({i},{j})"),
            DatumViolation::NotSymmetrizable(i, j) => write!(f, "NotSymmetrizable({i},{j})"),
            DatumViolation::NonPositiveSymmetrizer(i) => write!(f, "NonPositiveSymmetrizer({i})"),
        }
    }
}

/// A validated symmetrizable Borcherds-Cartan matrix with its symmetrizers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BorcherdsCartanDatum {
    a: Vec<Vec<i64>>,
    s: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexClassification {
    pub real: Vec<usize>,
    pub imaginary: Vec<usize>,
}

/// Coordinates of an element of the root lattice in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn zero(n: usize) -> Self {
        RootVector(vec![0; n])
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVector(v)
    }

    /// Height, defined only on the positive cone.
    pub fn height(&self) -> Option<i64> {
        self.is_nonnegative().then(|| self.0.iter().sum())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add_assign_scaled(&mut self, i: usize, c: i64) {
        self.0[i] += c;
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Checks every Borcherds-Cartan condition and symmetrizability, collecting
/// all violations rather than stopping at the first.
pub fn validate_datum(a: &[Vec<i64>], s: &[i64]) -> Result<BorcherdsCartanDatum> {
    let n = a.len();
    if n == 0 || n > MAX_RANK || a.iter().any(|row| row.len() != n) || s.len() != n {
        return Err(Error::Validation(vec![DatumViolation::NonSquare]));
    }
    let mut errs = Vec::new();
    for (i, &si) in s.iter().enumerate() {
        if si <= 0 {
            errs.push(DatumViolation::NonPositiveSymmetrizer(i));
        }
    }
    for (i, row) in a.iter().enumerate() {
        let d = row[i];
        if d != 2 && d > 0 {
            errs.push(DatumViolation::DiagonalViolation(i));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if a[i][j] > 0 {
                errs.push(DatumViolation::SignViolation(i, j));
            }
            // Reported once per unordered pair, at the position holding the nonzero entry.
            if a[i][j] != 0 && a[j][i] == 0 {
                errs.push(DatumViolation::ZeroPairViolation(j, i));
            }
            let pair_ok = a[i][j] <= 0 && a[j][i] <= 0 && (a[i][j] == 0) == (a[j][i] == 0);
            if i < j && pair_ok && s[i] > 0 && s[j] > 0 && s[i] * a[i][j] != s[j] * a[j][i] {
                errs.push(DatumViolation::NotSymmetrizable(i, j));
            }
        }
    }
    if errs.is_empty() {
        Ok(BorcherdsCartanDatum { a: a.to_vec(), s: s.to_vec() })
    } else {
        Err(Error::Validation(errs))
    }
}

/// Searches positive integer symmetrizers with entries up to `bound` for
/// small matrices. Returns the lexicographically first solution.
pub fn find_symmetrizers(a: &[Vec<i64>], bound: i64) -> Option<Vec<i64>> {
    let n = a.len();
    if n == 0 || n > 8 {
        return None;
    }
    let mut s = vec![1i64; n];
    loop {
        let ok = (0..n).all(|i| (0..n).all(|j| s[i] * a[i][j] == s[j] * a[j][i]));
        if ok {
            return Some(s);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            if s[k] < bound {
                s[k] += 1;
                for x in s.iter_mut().skip(k + 1) {
                    *x = 1;
                }
                break;
            }
        }
    }
}

impl BorcherdsCartanDatum {
    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.s
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn symmetrizer(&self, i: usize) -> i64 {
        self.s[i]
    }

    pub fn is_real(&self, i: usize) -> bool {
        self.a[i][i] == 2
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank() })
        }
    }

    /// `(alpha_i | alpha_j) = s_i a_ij`.
    pub fn bilinear_form(&self, i: usize, j: usize) -> Result<i64> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.s[i] * self.a[i][j])
    }

    /// Pairing of two root vectors under the symmetric form.
    pub fn form_roots(&self, x: &RootVector, y: &RootVector) -> i64 {
        let n = self.rank();
        let mut acc = 0;
        for i in 0..n {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc += x.0[i] * y.0[j] * self.s[i] * self.a[i][j];
            }
        }
        acc
    }
}

pub fn classify_indices(d: &BorcherdsCartanDatum) -> IndexClassification {
    let (real, imaginary) = (0..d.rank()).partition(|&i| d.is_real(i));
    IndexClassification { real, imaginary }
}

/// The five small data used throughout the test suites:
/// sl2, sl3, rank-1 imaginary `[[0]]` and `[[-2]]`, and a mixed rank-2 datum.
pub fn gallery() -> Vec<(&'static str, BorcherdsCartanDatum)> {
    let raw: [(&str, Vec<Vec<i64>>); 5] = [
        ("sl2", vec![vec![2]]),
        ("sl3", vec![vec![2, -1], vec![-1, 2]]),
        ("im0", vec![vec![0]]),
        ("im-2", vec![vec![-2]]),
        ("mixed", vec![vec![2, -1], vec![-1, 0]]),
    ];
    raw.into_iter()
        .map(|(name, a)| {
            let s = vec![1; a.len()];
            (name, validate_datum(&a, &s).expect("gallery datum is valid"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl3() -> BorcherdsCartanDatum {
        validate_datum(&[vec![2, -1], vec![-1, 2]], &[1, 1]).unwrap()
    }

    #[test]
    fn accepts_standard_and_imaginary() {
        sl3();
        let d = validate_datum(&[vec![-2, -1], vec![-1, 2]], &[1, 1]).unwrap();
        assert_eq!(classify_indices(&d).imaginary, vec![0]);
    }

    #[test]
    fn zero_pair_violation() {
        let e = validate_datum(&[vec![2, -1], vec![0, 2]], &[1, 1]).unwrap_err();
        assert_eq!(e, Error::Validation(vec![DatumViolation::ZeroPairViolation(1, 0)]));
    }

    #[test]
    fn classification() {
        let real1 = validate_datum(&[vec![2]], &[1]).unwrap();
        assert_eq!(classify_indices(&real1), IndexClassification { real: vec![0], imaginary: vec![] });
        let im1 = validate_datum(&[vec![0]], &[1]).unwrap();
        assert_eq!(classify_indices(&im1), IndexClassification { real: vec![], imaginary: vec![0] });
        let mixed = validate_datum(&[vec![2, -1], vec![-1, 0]], &[1, 1]).unwrap();
        assert_eq!(classify_indices(&mixed), IndexClassification { real: vec![0], imaginary: vec![1] });
    }

    #[test]
    fn form_values() {
        let d = sl3();
        assert_eq!(d.bilinear_form(0, 0).unwrap(), 2);
        assert_eq!(d.bilinear_form(0, 1).unwrap(), -1);
        assert_eq!(d.bilinear_form(1, 0).unwrap(), -1);
        let b2 = validate_datum(&[vec![2, -2], vec![-1, 2]], &[1, 2]).unwrap();
        assert_eq!(b2.bilinear_form(0, 1).unwrap(), -2);
        assert_eq!(b2.bilinear_form(1, 0).unwrap(), -2);
        assert!(matches!(d.bilinear_form(2, 0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn symmetrizer_search() {
        assert_eq!(find_symmetrizers(&[vec![2, -2], vec![-1, 2]], 4), Some(vec![1, 2]));
        assert_eq!(find_symmetrizers(&[vec![2, -1], vec![-1, 2]], 4), Some(vec![1, 1]));
    }

    #[test]
    fn height() {
        assert_eq!(RootVector(vec![1, 2]).height(), Some(3));
        assert_eq!(RootVector(vec![1, -2]).height(), None);
    }
}
