//! Based rings given by structure constants `N[i][j][k] = N_ij^k`.

use itertools::Itertools;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::poly::{IntMatrix, IntPoly};
use crate::error::{Error, Result};
use crate::{QuadVal, Rational};

/// Finite based ring with a duality involution on its basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FusionRing {
    rank: usize,
    dual: Vec<usize>,
    n: Vec<i64>,
    labels: Option<Vec<String>>,
}

/// On-disk layout of a ring file.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct RingFile {
    rank: usize,
    dual: Vec<usize>,
    #[serde(rename = "N")]
    n: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    /// First counterexample, when the check fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub axioms: Vec<AxiomCheck>,
    /// Checked and reported but never fails verification.
    pub extended: Vec<AxiomCheck>,
}

impl VerificationReport {
    pub fn failed_axioms(&self) -> Vec<&'static str> {
        self.axioms
            .iter()
            .filter(|a| !a.passed)
            .map(|a| a.name)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FpDims {
    pub dims: Vec<QuadVal>,
    /// `sum FPdim(X_i)^2`.
    pub total: QuadVal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CodegreeSet {
    /// Decreasing order; `values[0]` is `f_1`.
    pub values: Vec<QuadVal>,
    pub source_poly: IntPoly,
    pub matrix: IntMatrix,
}

fn check(name: &'static str, first_failure: Option<String>) -> AxiomCheck {
    AxiomCheck {
        name,
        passed: first_failure.is_none(),
        detail: first_failure,
    }
}

impl FusionRing {
    /// Builds a ring from a nested tensor; only the shape is validated here.
    pub fn new(dual: Vec<usize>, n: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        let rank = dual.len();
        Self::from_parts(rank, dual, n, None)
    }

    fn from_parts(
        rank: usize,
        dual: Vec<usize>,
        n: Vec<Vec<Vec<i64>>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ShapeMismatch("rank must be positive".into()));
        }
        if dual.len() != rank {
            return Err(Error::ShapeMismatch(format!(
                "dual has {} entries, rank is {rank}",
                dual.len()
            )));
        }
        if let Some(&bad) = dual.iter().find(|&&d| d >= rank) {
            return Err(Error::ShapeMismatch(format!(
                "dual entry {bad} out of range"
            )));
        }
        if let Some(l) = &labels {
            if l.len() != rank {
                return Err(Error::ShapeMismatch(format!(
                    "{} labels for rank {rank}",
                    l.len()
                )));
            }
        }
        let well_shaped = n.len() == rank
            && n.iter()
                .all(|m| m.len() == rank && m.iter().all(|r| r.len() == rank));
        if !well_shaped {
            return Err(Error::ShapeMismatch(format!(
                "structure constants must form a {rank}x{rank}x{rank} tensor"
            )));
        }
        Ok(FusionRing {
            rank,
            dual,
            n: n.into_iter().flatten().flatten().collect(),
            labels,
        })
    }

    pub fn with_labels(mut self, labels: &[&str]) -> Self {
        assert_eq!(labels.len(), self.rank);
        self.labels = Some(labels.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: RingFile =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_parts(file.rank, file.dual, file.n, file.labels)
    }

    /// Compact JSON in the ring-file layout.
    pub fn to_json(&self) -> String {
        let file = RingFile {
            rank: self.rank,
            dual: self.dual.clone(),
            n: self.tensor(),
            labels: self.labels.clone(),
        };
        serde_json::to_string(&file).expect("ring serialization cannot fail")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dual(&self) -> &[usize] {
        &self.dual
    }

    pub fn labels(&self) -> Vec<String> {
        self.labels.clone().unwrap_or_else(|| {
            if self.rank == 4 {
                ["1", "X", "Y", "Z"].iter().map(|s| s.to_string()).collect()
            } else {
                (0..self.rank).map(|i| format!("X{i}")).collect()
            }
        })
    }

    /// `N_ij^k`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        self.n[(i * self.rank + j) * self.rank + k]
    }

    pub fn tensor(&self) -> Vec<Vec<Vec<i64>>> {
        let r = self.rank;
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| (0..r).map(|k| self.get(i, j, k)).collect())
                    .collect()
            })
            .collect()
    }

    /// Returns a copy with one structure constant replaced.
    pub fn with_entry(&self, i: usize, j: usize, k: usize, v: i64) -> Self {
        let mut out = self.clone();
        out.n[(i * self.rank + j) * self.rank + k] = v;
        out
    }

    pub fn verify(&self) -> VerificationReport {
        let r = self.rank;
        let idx = || (0..r).cartesian_product(0..r).cartesian_product(0..r);

        let involution = check(
            "duality involution",
            (0..r)
                .find(|&i| self.dual[self.dual[i]] != i)
                .map(|i| format!("dual(dual({i})) != {i}"))
                .or_else(|| (self.dual[0] != 0).then(|| "dual(0) != 0".to_string())),
        );
        let nonneg = check(
            "nonnegativity",
            idx()
                .find(|&((i, j), k)| self.get(i, j, k) < 0)
                .map(|((i, j), k)| format!("N[{i}][{j}][{k}] = {}", self.get(i, j, k))),
        );
        let unit = check(
            "unit",
            (0..r).cartesian_product(0..r).find_map(|(j, k)| {
                let want = (j == k) as i64;
                if self.get(0, j, k) != want {
                    Some(format!("N[0][{j}][{k}] = {}", self.get(0, j, k)))
                } else if self.get(j, 0, k) != want {
                    Some(format!("N[{j}][0][{k}] = {}", self.get(j, 0, k)))
                } else {
                    None
                }
            }),
        );
        let duality = check(
            "duality",
            (0..r).cartesian_product(0..r).find_map(|(i, j)| {
                let want = (i == self.dual[j]) as i64;
                (self.get(i, j, 0) != want)
                    .then(|| format!("N[{i}][{j}][0] = {}, expected {want}", self.get(i, j, 0)))
            }),
        );
        let assoc = check(
            "associativity",
            idx().cartesian_product(0..r).find_map(|(((i, j), k), l)| {
                let lhs: i64 = (0..r).map(|m| self.get(i, j, m) * self.get(m, k, l)).sum();
                let rhs: i64 = (0..r).map(|m| self.get(j, k, m) * self.get(i, m, l)).sum();
                (lhs != rhs)
                    .then(|| format!("(X{i} X{j}) X{k} and X{i} (X{j} X{k}) differ at X{l}"))
            }),
        );
        let d = &self.dual;
        let symmetry = check(
            "dual symmetry N_ij^k = N_{j*i*}^{k*}",
            idx().find_map(|((i, j), k)| {
                (self.get(i, j, k) != self.get(d[j], d[i], d[k]))
                    .then(|| format!("fails at ({i}, {j}, {k})"))
            }),
        );
        let axioms = vec![involution, nonneg, unit, duality, assoc];
        VerificationReport {
            passed: axioms.iter().all(|a| a.passed),
            axioms,
            extended: vec![symmetry],
        }
    }

    /// Left-multiplication matrices: `(M_i)_{kj} = N_ij^k`.
    pub fn mult_matrices(&self) -> Vec<IntMatrix> {
        let r = self.rank;
        (0..r)
            .map(|i| {
                let rows: Vec<Vec<i64>> = (0..r)
                    .map(|k| (0..r).map(|j| self.get(i, j, k)).collect())
                    .collect();
                IntMatrix::from_rows(&rows)
            })
            .collect()
    }

    /// Frobenius-Perron dimensions: the largest real eigenvalue of each `M_i`.
    pub fn fpdim(&self) -> Result<FpDims> {
        let mut dims = Vec::with_capacity(self.rank);
        for m in self.mult_matrices() {
            let (real, _) = m.char_poly().roots()?;
            let top = real
                .into_iter()
                .max_by(|x, y| x.cmp_exact(y))
                .ok_or_else(|| Error::ShapeMismatch("no real eigenvalue".into()))?;
            dims.push(top);
        }
        let mut total = QuadVal::from_int(0);
        for d in &dims {
            total = total.try_add(&d.try_mul(d)?)?;
        }
        Ok(FpDims { dims, total })
    }

    /// `sum_i M_i M_{i*}`, whose eigenvalues are the formal codegrees.
    pub fn codegree_matrix(&self) -> IntMatrix {
        let ms = self.mult_matrices();
        ms.iter()
            .enumerate()
            .fold(IntMatrix::zeros(self.rank), |acc, (i, m)| {
                acc.add(&m.mul(&ms[self.dual[i]]))
            })
    }

    /// True for the rank-4 layout (1, X, Y, Z) with `X* = Z` and `Y* = Y`.
    pub fn is_two_self_dual_layout(&self) -> bool {
        self.rank == 4 && self.dual == [0, 3, 2, 1]
    }

    /// Formal codegrees with exact values. For the standard rank-4 layout
    /// the matrix is also cross-checked against `1 + M_Y^2 + 2 M_X M_Z`.
    pub fn formal_codegrees(&self) -> Result<CodegreeSet> {
        if self.rank > 4 {
            return Err(Error::EigenvalueDegreeTooHigh { degree: self.rank });
        }
        let a = self.codegree_matrix();
        if self.is_two_self_dual_layout() {
            let ms = self.mult_matrices();
            let explicit = IntMatrix::identity(4)
                .add(&ms[2].mul(&ms[2]))
                .add(&ms[1].mul(&ms[3]).scale(&BigInt::from(2)));
            if explicit != a {
                return Err(Error::ShapeMismatch(
                    "1 + M_Y^2 + 2 M_X M_Z differs from sum of M_i M_i*".into(),
                ));
            }
        }
        let poly = a.char_poly();
        let (values, complex) = poly.roots()?;
        if complex > 0 {
            return Err(Error::ShapeMismatch(
                "codegree matrix has non-real eigenvalues".into(),
            ));
        }
        Ok(CodegreeSet {
            values,
            source_poly: poly,
            matrix: a,
        })
    }

    /// A basis permutation `sigma` (fixing the unit, commuting with duality)
    /// with `N1_ij^k = N2_{sigma i, sigma j}^{sigma k}`, if one exists.
    pub fn is_isomorphic(&self, other: &FusionRing) -> Option<Vec<usize>> {
        if self.rank != other.rank {
            return None;
        }
        let r = self.rank;
        (1..r).permutations(r - 1).find_map(|tail| {
            let sigma: Vec<usize> = std::iter::once(0).chain(tail).collect();
            let commutes = (0..r).all(|i| sigma[self.dual[i]] == other.dual[sigma[i]]);
            let same = commutes
                && (0..r)
                    .cartesian_product(0..r)
                    .cartesian_product(0..r)
                    .all(|((i, j), k)| {
                        self.get(i, j, k) == other.get(sigma[i], sigma[j], sigma[k])
                    });
            same.then_some(sigma)
        })
    }

    /// Checks `FPdim(X_i) FPdim(X_j) = sum_k N_ij^k FPdim(X_k)` for all `i, j`.
    pub fn fpdim_is_homomorphism(&self, dims: &[QuadVal]) -> Result<bool> {
        let r = self.rank;
        for (i, j) in (0..r).cartesian_product(0..r) {
            let lhs = dims[i].try_mul(&dims[j])?;
            let mut rhs = QuadVal::from_int(0);
            for (k, dk) in dims.iter().enumerate() {
                let coef = QuadVal::rational(Rational::from_integer(self.get(i, j, k).into()));
                rhs = rhs.try_add(&coef.try_mul(dk)?)?;
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Group ring of the cyclic group of order `n`.
pub fn cyclic_group_ring(n: usize) -> FusionRing {
    let t = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| ((i + j) % n == k) as i64).collect())
                .collect()
        })
        .collect();
    let dual = (0..n).map(|i| (n - i) % n).collect();
    FusionRing::new(dual, t).expect("well-shaped by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let r = cyclic_group_ring(4);
        let text = r.to_json();
        assert!(text.starts_with(r#"{"rank":4,"dual":[0,3,2,1],"N":[[[1,0,0,0]"#));
        assert_eq!(FusionRing::from_json(&text).unwrap(), r);
    }

    #[test]
    fn malformed_tensor() {
        let err = FusionRing::from_json(r#"{"rank":2,"dual":[0,1],"N":[[[1,0],[0,1]]]}"#);
        assert!(matches!(err, Err(Error::ShapeMismatch(_))));
        assert!(matches!(FusionRing::from_json("{"), Err(Error::Format(_))));
    }

    #[test]
    fn group_ring_axioms() {
        let r = cyclic_group_ring(5);
        let rep = r.verify();
        assert!(rep.passed, "{rep:?}");
        assert!(rep.extended[0].passed);
    }

    #[test]
    fn identity_matrix_for_unit() {
        let r = cyclic_group_ring(4);
        assert_eq!(r.mult_matrices()[0], IntMatrix::identity(4));
    }

    #[test]
    fn cyclic_codegrees() {
        let cs = cyclic_group_ring(4).formal_codegrees().unwrap();
        assert!(cs.values.iter().all(|v| *v == QuadVal::from_int(4)));
    }
}
