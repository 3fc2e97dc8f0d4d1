//! Finite-dimensional Lie algebras given by structure constants.

use num::{One, Zero};

use crate::algebra::{q, Rational};
use crate::error::{Error, Result};

/// Structure constants `f[i][j][k]` with `[X_j, X_k] = Σ_i f^i_{jk} X_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraData {
    name: Option<String>,
    dim: usize,
    f: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebraData {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(name: Option<String>, dim: usize, f: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        if f.len() != dim || f.iter().any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim)) {
            return Err(Error::Dimension(format!("structure constants must be {dim}x{dim}x{dim}")));
        }
        let lie = LieAlgebraData { name, dim, f };
        lie.check_antisymmetry()?;
        lie.check_jacobi()?;
        Ok(lie)
    }

    /// Builds from sparse entries `(i, j, k, f^i_{jk})`; entries are taken
    /// verbatim, so antisymmetric partners must be listed too.
    pub fn from_entries(name: Option<String>, dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut f = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for (i, j, k, v) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::Dimension(format!("index ({i}, {j}, {k}) outside dimension {dim}")));
            }
            f[*i][*j][*k] = v.clone();
        }
        Self::new(name, dim, f)
    }

    /// Like `from_entries` but fills in `f^i_{kj} = -f^i_{jk}` for each entry.
    pub fn from_brackets(name: &str, dim: usize, brackets: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, j, k, v) in brackets {
            entries.push((*i, *j, *k, v.clone()));
            entries.push((*i, *k, *j, -v.clone()));
        }
        Self::from_entries(Some(name.to_string()), dim, &entries)
    }

    pub fn abelian(dim: usize) -> Self {
        let name = if dim == 1 { "u1".to_string() } else { format!("abelian{dim}") };
        LieAlgebraData { name: Some(name), dim, f: vec![vec![vec![Rational::zero(); dim]; dim]; dim] }
    }

    pub fn u1() -> Self {
        Self::abelian(1)
    }

    /// so(3) with `f^i_{jk} = ε_{ijk}`.
    pub fn so3() -> Self {
        let mut entries = Vec::new();
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            entries.push((i, j, k, q(1)));
            entries.push((i, k, j, q(-1)));
        }
        Self::from_entries(Some("so3".into()), 3, &entries).expect("so(3) is a Lie algebra")
    }

    /// sl(2) in the basis (H, E, F): [H,E] = 2E, [H,F] = -2F, [E,F] = H.
    pub fn sl2() -> Self {
        Self::from_brackets("sl2", 3, &[(1, 0, 1, q(2)), (2, 0, 2, q(-2)), (0, 1, 2, q(1))])
            .expect("sl(2) is a Lie algebra")
    }

    /// The three-dimensional Heisenberg algebra: [X, Y] = Z.
    pub fn heisenberg() -> Self {
        Self::from_brackets("heisenberg", 3, &[(2, 0, 1, q(1))]).expect("heisenberg is a Lie algebra")
    }

    /// Block-diagonal sum; the basis of `other` follows the basis of `self`.
    pub fn direct_sum(&self, other: &LieAlgebraData) -> Self {
        let dim = self.dim + other.dim;
        let mut f = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    f[i][j][k] = self.f[i][j][k].clone();
                }
            }
        }
        let o = self.dim;
        for i in 0..other.dim {
            for j in 0..other.dim {
                for k in 0..other.dim {
                    f[o + i][o + j][o + k] = other.f[i][j][k].clone();
                }
            }
        }
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        LieAlgebraData { name, dim, f }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `f^i_{jk}`.
    pub fn f(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.f[i][j][k]
    }

    pub fn is_abelian(&self) -> bool {
        self.f.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// Nonzero structure constants as `(i, j, k, value)`.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    if !self.f[i][j][k].is_zero() {
                        out.push((i, j, k, self.f[i][j][k].clone()));
                    }
                }
            }
        }
        out
    }

    fn check_antisymmetry(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    if self.f[i][j][k] != -self.f[i][k][j].clone() {
                        return Err(Error::Antisymmetry { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = Rational::zero();
                        for m in 0..n {
                            s += &self.f[m][j][k] * &self.f[i][m][l];
                            s += &self.f[m][k][l] * &self.f[i][m][j];
                            s += &self.f[m][l][j] * &self.f[i][m][k];
                        }
                        if !s.is_zero() {
                            return Err(Error::Jacobi { i, j, k, l });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, o) in out.iter_mut().enumerate() {
            for j in 0..self.dim {
                if x[j].is_zero() {
                    continue;
                }
                for k in 0..self.dim {
                    if !y[k].is_zero() {
                        *o += &self.f[i][j][k] * &x[j] * &y[k];
                    }
                }
            }
        }
        out
    }

    /// Checks that the matrix `m` (columns are images of basis vectors,
    /// `σ(X_j) = Σ_i m[i][j] X_i`) is an invertible bracket-preserving map.
    pub fn check_automorphism(&self, m: &[Vec<Rational>]) -> Result<()> {
        let n = self.dim;
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("automorphism must be {n}x{n}")));
        }
        let col = |j: usize| -> Vec<Rational> { (0..n).map(|i| m[i][j].clone()).collect() };
        for j in 0..n {
            for k in 0..n {
                let lhs = self.bracket(&col(j), &col(k));
                let mut rhs = vec![Rational::zero(); n];
                for (i, r) in rhs.iter_mut().enumerate() {
                    for p in 0..n {
                        *r += &m[i][p] * &self.f[p][j][k];
                    }
                }
                if lhs != rhs {
                    return Err(Error::CheckFailed(format!(
                        "matrix does not preserve the bracket [X_{j}, X_{k}]"
                    )));
                }
            }
        }
        if invert(m).is_none() {
            return Err(Error::CheckFailed("automorphism matrix is singular".into()));
        }
        Ok(())
    }
}

/// Exact inverse of a square matrix, if it exists.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = Rational::one() / a[c][c].clone();
        for v in a[c].iter_mut() {
            *v *= &inv;
        }
        let pivot = a[c].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let factor = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v -= &factor * pv;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_algebras_validate() {
        for lie in [LieAlgebraData::u1(), LieAlgebraData::abelian(2), LieAlgebraData::so3(), LieAlgebraData::sl2(), LieAlgebraData::heisenberg()] {
            let again = LieAlgebraData::new(lie.name.clone(), lie.dim, lie.f.clone());
            assert!(again.is_ok(), "{:?}", lie.name);
        }
    }

    #[test]
    fn jacobi_violation_is_rejected() {
        // [X0,X1] = X1, [X0,X2] = X1, [X1,X2] = X0 fails Jacobi
        let err = LieAlgebraData::from_brackets("bad", 3, &[(1, 0, 1, q(1)), (1, 0, 2, q(1)), (0, 1, 2, q(1))]).unwrap_err();
        assert!(matches!(err, Error::Jacobi { .. }));
    }

    #[test]
    fn antisymmetry_violation_is_rejected() {
        let err = LieAlgebraData::from_entries(None, 2, &[(0, 0, 1, q(1))]).unwrap_err();
        assert!(matches!(err, Error::Antisymmetry { .. }));
    }

    #[test]
    fn signed_permutation_of_so3_is_automorphism() {
        // X0 <-> X1, X2 -> -X2
        let m = vec![vec![q(0), q(1), q(0)], vec![q(1), q(0), q(0)], vec![q(0), q(0), q(-1)]];
        LieAlgebraData::so3().check_automorphism(&m).unwrap();
        let bad = vec![vec![q(0), q(1), q(0)], vec![q(1), q(0), q(0)], vec![q(0), q(0), q(1)]];
        assert!(LieAlgebraData::so3().check_automorphism(&bad).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        assert!(invert(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }
}
