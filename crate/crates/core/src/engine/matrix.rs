use crate::error::{EneError, Result};
use crate::ring::{check_same, Ring};
use crate::series::{ExpForm, Series, UnitSeries};

/// Dense square matrix over a ring, row-major.
#[derive(Debug, Clone)]
pub struct RingMatrix<R: Ring> {
    ring: R,
    dim: usize,
    entries: Vec<R::Elem>,
}

impl<R: Ring> RingMatrix<R> {
    pub fn from_fn(ring: R, dim: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        RingMatrix { ring, dim, entries }
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        RingMatrix {
            ring,
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zero(ring: R, dim: usize) -> Self {
        let z = ring.zero();
        Self::from_fn(ring, dim, |_, _| z.clone())
    }

    pub fn identity(ring: R, dim: usize) -> Self {
        let (z, o) = (ring.zero(), ring.one());
        Self::from_fn(ring, dim, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn diagonal(ring: R, diag: &[R::Elem]) -> Self {
        let z = ring.zero();
        Self::from_fn(ring, diag.len(), |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                z.clone()
            }
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<R::Elem>> {
        self.entries.chunks(self.dim.max(1)).map(<[_]>::to_vec).collect()
    }

    pub fn trace(&self) -> R::Elem {
        (0..self.dim).fold(self.ring.zero(), |acc, i| self.ring.add(&acc, self.get(i, i)))
    }

    pub fn mul(&self, other: &RingMatrix<R>) -> Result<RingMatrix<R>> {
        check_same(&self.ring, &other.ring)?;
        if self.dim != other.dim {
            return Err(EneError::invalid("matrix mul", "dimension mismatch"));
        }
        let r = &self.ring;
        Ok(Self::from_fn(r.clone(), self.dim, |i, j| {
            (0..self.dim).fold(r.zero(), |acc, k| {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if r.is_exact_zero(a) || r.is_exact_zero(b) {
                    acc
                } else {
                    r.add(&acc, &r.mul(a, b))
                }
            })
        }))
    }

    pub fn equals(&self, other: &RingMatrix<R>) -> bool {
        self.ring == other.ring
            && self.dim == other.dim
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| self.ring.equal(a, b))
    }
}

/// Companion matrix `M_P` with `det(I - M_P X) = P` for `P = 1 + a_1 X + ... + a_d X^d`:
/// ones on the subdiagonal and last column `(-a_d, ..., -a_1)`.
pub fn companion_matrix<R: Ring>(p: &Series<R>) -> Result<RingMatrix<R>> {
    let d = p.degree();
    if d == 0 {
        return Err(EneError::ZeroPolynomialTail("companion_matrix"));
    }
    let r = p.ring();
    let (z, o) = (r.zero(), r.one());
    Ok(RingMatrix::from_fn(r.clone(), d, |i, j| {
        if j == d - 1 {
            r.neg(p.coeff(d - i))
        } else if i == j + 1 {
            o.clone()
        } else {
            z.clone()
        }
    }))
}

/// `(M ⊗ N)[(i,k),(j,l)] = M[i][j] N[k][l]`.
pub fn kronecker<R: Ring>(m: &RingMatrix<R>, n: &RingMatrix<R>) -> Result<RingMatrix<R>> {
    check_same(&m.ring, &n.ring)?;
    let r = &m.ring;
    let dn = n.dim;
    Ok(RingMatrix::from_fn(r.clone(), m.dim * dn, |row, col| {
        r.mul(m.get(row / dn, col / dn), n.get(row % dn, col % dn))
    }))
}

/// Coefficients of `det(I - MX)` by Berkowitz's division-free algorithm.
pub fn berkowitz<R: Ring>(m: &RingMatrix<R>) -> Vec<R::Elem> {
    let r = &m.ring;
    let mut vect = vec![r.one()];
    for k in 0..m.dim {
        // q = (1, -a_kk, -R C, -R A C, ..., -R A^{k-1} C)
        let mut q = Vec::with_capacity(k + 2);
        q.push(r.one());
        q.push(r.neg(m.get(k, k)));
        let mut col: Vec<R::Elem> = (0..k).map(|i| m.get(i, k).clone()).collect();
        for step in 0..k {
            let dot = (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(m.get(k, j), &col[j])));
            q.push(r.neg(&dot));
            if step + 1 < k {
                col = (0..k)
                    .map(|i| (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(m.get(i, j), &col[j]))))
                    .collect();
            }
        }
        let next: Vec<R::Elem> = (0..k + 2)
            .map(|i| {
                (0..=i.min(k)).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&q[i - j], &vect[j])))
            })
            .collect();
        vect = next;
    }
    vect
}

/// `det(I - MX)` embedded at the given order.
///
/// On exact Q-algebras the Berkowitz result is checked against
/// `exp(-Σ Tr(M^k) X^k / k)` up to `min(order, dim)`.
pub fn det_series<R: Ring>(m: &RingMatrix<R>, order: usize) -> Result<UnitSeries<R>> {
    let r = m.ring.clone();
    let coeffs = berkowitz(m);
    let det = UnitSeries::new(Series::from_fn(r.clone(), order, |i| {
        coeffs.get(i).cloned().unwrap_or_else(|| r.zero())
    }))?;
    if r.is_q_algebra() && r.descriptor().is_exact() && m.dim > 0 {
        let top = order.min(m.dim);
        let mut power = m.clone();
        let mut traces = vec![r.zero()];
        for k in 1..=top {
            traces.push(r.int_divide(&r.neg(&power.trace()), k as i64)?);
            if k < top {
                power = power.mul(m)?;
            }
        }
        let via_trace = ExpForm::from_tail(r.clone(), traces[1..].to_vec()).exp()?;
        if let Some(index) = via_trace.first_difference(&det) {
            return Err(EneError::EngineMismatch {
                op: "det_series",
                index,
            });
        }
    }
    Ok(det)
}

/// `P ⋆ Q = det(I - (M_P ⊗ M_Q) X)` for polynomials `P`, `Q`.
pub fn ene_tensor<R: Ring>(p: &UnitSeries<R>, q: &UnitSeries<R>, order: usize) -> Result<UnitSeries<R>> {
    check_same(p.ring(), q.ring())?;
    if p.degree() == 0 || q.degree() == 0 {
        return Ok(UnitSeries::one(p.ring().clone(), order));
    }
    let m = kronecker(&companion_matrix(p)?, &companion_matrix(q)?)?;
    det_series(&m, order)
}
