//! Uniform grid on (0, 1), the tridiagonal discrete Laplacian and its
//! closed-form eigenpairs, and the Thomas solver used at every time step.
//!
//! The operator is `A = N^2 * tridiag(-1, 2, -1)` acting on the `N - 1`
//! interior nodal values with zero Dirichlet ghost values. It is stored
//! implicitly (stencil plus scale); eigenvalues and eigenvectors come from
//! the closed forms `lambda_j = 4 N^2 sin^2(j pi / (2N))` and
//! `phi_j[k] = sqrt(2/N) sin(j k pi / N)`, never from a numerical
//! eigensolver.

use std::marker::PhantomData;

use crate::{cast, Error, Real, Result};

/// Uniform partition of [0, 1] into `N` subintervals, `h = 1/N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid<T> {
    n: usize,
    _scalar: PhantomData<T>,
}

impl<T: Real> Grid<T> {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        Ok(Self {
            n,
            _scalar: PhantomData,
        })
    }

    /// Number of subintervals.
    pub fn subintervals(&self) -> usize {
        self.n
    }

    /// Number of interior nodes, `N - 1`.
    pub fn interior_nodes(&self) -> usize {
        self.n - 1
    }

    pub fn mesh_size(&self) -> T {
        T::one() / cast::<T>(self.n as f64)
    }

    /// Node `x_i = i / N`, `i = 0..=N`.
    pub fn node(&self, i: usize) -> T {
        debug_assert!(i <= self.n);
        cast::<T>(i as f64) / cast::<T>(self.n as f64)
    }

    /// Interior nodes `x_1 .. x_{N-1}`.
    pub fn interior(&self) -> impl Iterator<Item = T> + '_ {
        (1..self.n).map(move |i| self.node(i))
    }
}

/// The discrete Laplacian `A = N^2 tridiag(-1, 2, -1)` on the interior nodes,
/// stored as stencil plus scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TridiagonalOperator<T> {
    n: usize,
    scale: T, // N^2
}

/// Closed-form eigenpair of the discrete Laplacian.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair<T> {
    /// Mode index `j`, 1-based.
    pub index: usize,
    /// `lambda_{h,j} = 4 N^2 sin^2(j pi / (2N))`.
    pub value: T,
    /// Samples `sqrt(2/N) sin(j k pi / N)`, `k = 1..N-1`; orthonormal under
    /// the Euclidean inner product.
    pub vector: Vec<T>,
    /// `c_j^N = sin^2(j pi / 2N) / (j pi / 2N)^2`, linking `lambda_{h,j}` to
    /// the continuous eigenvalue `j^2 pi^2`.
    pub cfactor: T,
}

/// `A = N^2 tridiag(-1, 2, -1)` on the `N - 1` interior nodes.
pub fn build_laplacian<T: Real>(n: usize) -> Result<TridiagonalOperator<T>> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    let nf = cast::<T>(n as f64);
    Ok(TridiagonalOperator {
        n,
        scale: nf * nf,
    })
}

impl<T: Real> TridiagonalOperator<T> {
    pub fn subintervals(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n - 1
    }

    /// Diagonal entry, `2 N^2`.
    pub fn diag(&self) -> T {
        (T::one() + T::one()) * self.scale
    }

    /// Off-diagonal entry, `-N^2`.
    pub fn off(&self) -> T {
        -self.scale
    }

    /// `v -> N^2 (-v_{i-1} + 2 v_i - v_{i+1})` with zero ghost values.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        let m = self.dim();
        if v.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: v.len(),
            });
        }
        let mut out = vec![T::zero(); m];
        self.apply_into(v, &mut out);
        Ok(out)
    }

    /// Same as [`apply`](Self::apply) without allocation; lengths must match.
    pub fn apply_into(&self, v: &[T], out: &mut [T]) {
        let m = self.dim();
        assert_eq!(v.len(), m);
        assert_eq!(out.len(), m);
        let two = T::one() + T::one();
        for i in 0..m {
            let mut acc = two * v[i];
            if i > 0 {
                acc = acc - v[i - 1];
            }
            if i + 1 < m {
                acc = acc - v[i + 1];
            }
            out[i] = self.scale * acc;
        }
    }
}

/// All `N - 1` eigenpairs, sorted by index.
pub fn eigenpairs<T: Real>(n: usize) -> Result<Vec<EigenPair<T>>> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    let pi = cast::<T>(std::f64::consts::PI);
    let nf = cast::<T>(n as f64);
    let norm = (cast::<T>(2.0) / nf).sqrt();
    let four = cast::<T>(4.0);
    let mut out = Vec::with_capacity(n - 1);
    for j in 1..n {
        let jf = cast::<T>(j as f64);
        let arg = jf * pi / (cast::<T>(2.0) * nf);
        let s = arg.sin();
        let value = four * nf * nf * s * s;
        let cfactor = (s / arg) * (s / arg);
        let vector = (1..n)
            .map(|k| norm * (jf * cast::<T>(k as f64) * pi / nf).sin())
            .collect();
        out.push(EigenPair {
            index: j,
            value,
            vector,
            cfactor,
        });
    }
    Ok(out)
}

/// Factored Thomas solver for the SPD shifted system `(c I + s A) x = rhs`.
///
/// The factorization is done once; each [`solve`](Self::solve) is two O(N)
/// sweeps. Strict diagonal dominance (`c >= 0`, `s > 0`) makes pivoting
/// unnecessary.
#[derive(Debug, Clone)]
pub struct ShiftedTridiagSolver<T> {
    off: T,
    /// Reciprocals of the pivots from the forward elimination.
    inv_pivot: Vec<T>,
}

impl<T: Real> ShiftedTridiagSolver<T> {
    pub fn new(op: &TridiagonalOperator<T>, c: T, s: T) -> Result<Self> {
        if c < T::zero() || s <= T::zero() {
            return Err(Error::Domain(format!(
                "shifted system needs c >= 0 and s > 0, got c={c:?}, s={s:?}"
            )));
        }
        let m = op.dim();
        let diag = c + s * op.diag();
        let off = s * op.off();
        let mut inv_pivot = Vec::with_capacity(m);
        let mut prev = diag;
        inv_pivot.push(T::one() / prev);
        for _ in 1..m {
            let pivot = diag - off * off / prev;
            inv_pivot.push(T::one() / pivot);
            prev = pivot;
        }
        Ok(Self { off, inv_pivot })
    }

    pub fn dim(&self) -> usize {
        self.inv_pivot.len()
    }

    pub fn solve(&self, rhs: &[T]) -> Result<Vec<T>> {
        let m = self.dim();
        if rhs.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: rhs.len(),
            });
        }
        let mut x = rhs.to_vec();
        self.solve_in_place(&mut x);
        Ok(x)
    }

    pub fn solve_in_place(&self, x: &mut [T]) {
        let m = self.dim();
        assert_eq!(x.len(), m);
        for i in 1..m {
            let factor = self.off * self.inv_pivot[i - 1];
            let prev = x[i - 1];
            x[i] = x[i] - factor * prev;
        }
        x[m - 1] = x[m - 1] * self.inv_pivot[m - 1];
        for i in (0..m - 1).rev() {
            let next = x[i + 1];
            x[i] = (x[i] - self.off * next) * self.inv_pivot[i];
        }
    }
}

/// One-shot solve of `(c I + s A) x = rhs`.
pub fn tridiag_solve<T: Real>(
    op: &TridiagonalOperator<T>,
    c: T,
    s: T,
    rhs: &[T],
) -> Result<Vec<T>> {
    ShiftedTridiagSolver::new(op, c, s)?.solve(rhs)
}
