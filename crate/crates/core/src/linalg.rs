//! Small dense-matrix helpers for the desk-scale verification paths.
//!
//! Everything here targets matrices of dimension at most a few thousand
//! (the Fock oracle cap), so the implementations favour clarity over
//! asymptotics.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Dense real square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Real> RMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![T::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.dim + c] = v;
    }

    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.dim + c] = self.data[r * self.dim + c] + v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == T::zero() {
                    continue;
                }
                for c in 0..n {
                    out.add_to(r, c, a * other.get(k, c));
                }
            }
        }
        out
    }

    pub fn scale(&self, s: T) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&x| x * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect(),
        }
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.sub(other).max_abs()
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c) * v[c]).fold(T::zero(), |a, b| a + b))
            .collect()
    }

    /// Antisymmetry defect max |A + Aᵀ|.
    pub fn antisymmetry_defect(&self) -> T {
        let mut d = T::zero();
        for r in 0..self.dim {
            for c in 0..self.dim {
                d = d.max((self.get(r, c) + self.get(c, r)).abs());
            }
        }
        d
    }

    /// Max |QᵀQ − I|.
    pub fn orthogonality_defect(&self) -> T {
        self.transpose().matmul(self).max_abs_diff(&Self::identity(self.dim))
    }

    /// Determinant via LU with partial pivoting.
    pub fn det(&self) -> T {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut det = T::one();
        for col in 0..n {
            let mut piv = col;
            for r in col + 1..n {
                if a[r * n + col].abs() > a[piv * n + col].abs() {
                    piv = r;
                }
            }
            if a[piv * n + col] == T::zero() {
                return T::zero();
            }
            if piv != col {
                for c in 0..n {
                    a.swap(piv * n + c, col * n + c);
                }
                det = -det;
            }
            let d = a[col * n + col];
            det = det * d;
            for r in col + 1..n {
                let f = a[r * n + col] / d;
                for c in col..n {
                    a[r * n + c] = a[r * n + c] - f * a[col * n + c];
                }
            }
        }
        det
    }
}

/// Dense complex square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex::new(T::zero(), T::zero()); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex::new(T::one(), T::zero()));
        }
        m
    }

    pub fn from_real(r: &RMatrix<T>) -> Self {
        let mut m = Self::zeros(r.dim());
        for i in 0..r.dim() {
            for j in 0..r.dim() {
                m.set(i, j, Complex::new(r.get(i, j), T::zero()));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex<T>) {
        self.data[r * self.dim + c] = v;
    }

    pub fn adjoint(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                t.set(c, r, self.get(r, c).conj());
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let zero = Complex::new(T::zero(), T::zero());
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == zero {
                    continue;
                }
                for c in 0..n {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect(),
        }
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, x| m.max(x.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.sub(other).max_abs()
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.dim);
        let zero = Complex::new(T::zero(), T::zero());
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c) * v[c]).fold(zero, |a, b| a + b))
            .collect()
    }

    /// Max |U†U − I|.
    pub fn unitarity_defect(&self) -> T {
        self.adjoint().matmul(self).max_abs_diff(&Self::identity(self.dim))
    }
}

/// Matrix exponential of a real matrix by scaling-and-squaring with a
/// truncated Taylor series on the scaled matrix.
pub fn expm_real<T: Real>(a: &RMatrix<T>) -> RMatrix<T> {
    let n = a.dim();
    // infinity norm
    let mut norm = T::zero();
    for r in 0..n {
        let row: T = (0..n).map(|c| a.get(r, c).abs()).fold(T::zero(), |x, y| x + y);
        norm = norm.max(row);
    }
    let mut squarings = 0u32;
    let quarter = lit::<T>(0.25);
    let mut scale = T::one();
    while norm * scale > quarter && squarings < 60 {
        scale = scale * lit::<T>(0.5);
        squarings += 1;
    }
    let b = a.scale(scale);
    let mut result = RMatrix::identity(n);
    let mut term = RMatrix::identity(n);
    let floor = lit::<T>(1e-20);
    for k in 1..=30 {
        term = term.matmul(&b).scale(T::one() / lit::<T>(k as f64));
        result = result.add(&term);
        if term.max_abs() < floor {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    result
}

/// Eigendecomposition of a symmetric matrix by the cyclic Jacobi method.
/// Returns eigenvalues and the orthogonal matrix whose columns are the
/// matching eigenvectors, so `S = V diag(vals) Vᵀ`.
pub fn jacobi_eigh<T: Real>(s: &RMatrix<T>) -> (Vec<T>, RMatrix<T>) {
    let n = s.dim();
    let mut a = s.clone();
    let mut v = RMatrix::identity(n);
    let eps = lit::<T>(1e-30);
    for _sweep in 0..200 {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off = off + a.get(p, q) * a.get(p, q);
            }
        }
        if off < eps {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq.abs() < lit::<T>(1e-300) {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let tau = (aqq - app) / (lit::<T>(2.0) * apq);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let sn = t * c;
                // rotate rows/columns p,q of a
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - sn * akq);
                    a.set(k, q, sn * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - sn * aqk);
                    a.set(q, k, sn * apk + c * aqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - sn * vkq);
                    v.set(k, q, sn * vkp + c * vkq);
                }
            }
        }
    }
    let vals = (0..n).map(|i| a.get(i, i)).collect();
    (vals, v)
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).fold(T::zero(), |p, q| p + q)
}

fn norm2<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// Principal-branch logarithm of a special orthogonal matrix.
///
/// Works from the eigenspaces of the symmetric part (Q + Qᵀ)/2, whose
/// eigenvalues are the plane cosines, and pairs basis vectors within each
/// eigenspace through the antisymmetric part. Angles land in (−π, π]. The
/// returned flag is set when a π-rotation plane was encountered: there the
/// plane pairing is not unique and the principal branch is a choice.
pub fn log_special_orthogonal<T: Real>(q: &RMatrix<T>) -> Result<(RMatrix<T>, bool)> {
    let n = q.dim();
    if q.orthogonality_defect() > lit::<T>(1e-8) {
        return Err(Error::NotSpecialOrthogonal);
    }
    if q.det() < T::zero() {
        return Err(Error::NotSpecialOrthogonal);
    }
    let s = q.add(&q.transpose()).scale(lit::<T>(0.5));
    let a = q.sub(&q.transpose()).scale(lit::<T>(0.5));
    let (vals, vecs) = jacobi_eigh(&s);

    // sort eigenpairs and chain-cluster nearly equal cosines
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());
    let cluster_tol = lit::<T>(1e-7);

    let mut k = RMatrix::zeros(n);
    let mut pi_flag = false;
    let column = |idx: usize| -> Vec<T> { (0..n).map(|r| vecs.get(r, idx)).collect() };

    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (vals[order[end]] - vals[order[end - 1]]).abs() < cluster_tol {
            end += 1;
        }
        let mut rem: Vec<Vec<T>> = (start..end).map(|i| column(order[i])).collect();
        while let Some(x) = rem.pop() {
            let ax = a.mul_vec(&x);
            let sn = norm2(&ax);
            if sn < lit::<T>(1e-11) {
                let qx = q.mul_vec(&x);
                if dot(&x, &qx) < T::zero() {
                    // π-rotation plane: pair with any remaining vector
                    pi_flag = true;
                    let y = rem.pop().ok_or(Error::NotSpecialOrthogonal)?;
                    add_plane(&mut k, &y, &x, T::PI());
                }
                continue;
            }
            let y: Vec<T> = ax.iter().map(|&v| v / sn).collect();
            let qx = q.mul_vec(&x);
            let theta = dot(&y, &qx).atan2(dot(&x, &qx));
            add_plane(&mut k, &y, &x, theta);
            // deflate: project remaining cluster vectors off span(x, y)
            for b in rem.iter_mut() {
                let bx = dot(b, &x);
                let by = dot(b, &y);
                for i in 0..n {
                    b[i] = b[i] - bx * x[i] - by * y[i];
                }
            }
            // the projection dropped exactly one dimension (y's): rebuild an
            // orthonormal basis of what is left, largest residuals first
            let target = rem.len().saturating_sub(1);
            rem.sort_by(|p, r| norm2(r).partial_cmp(&norm2(p)).unwrap());
            let mut ortho: Vec<Vec<T>> = Vec::with_capacity(target);
            for mut b in rem.drain(..) {
                if ortho.len() == target {
                    break;
                }
                for o in &ortho {
                    let c = dot(&b, o);
                    for i in 0..n {
                        b[i] = b[i] - c * o[i];
                    }
                }
                let nb = norm2(&b);
                if nb > lit::<T>(1e-6) {
                    for v in b.iter_mut() {
                        *v = *v / nb;
                    }
                    ortho.push(b);
                }
            }
            rem = ortho;
        }
        start = end;
    }
    Ok((k, pi_flag))
}

/// K += θ (y xᵀ − x yᵀ): generator of a rotation by θ in the (x, y) plane.
fn add_plane<T: Real>(k: &mut RMatrix<T>, y: &[T], x: &[T], theta: T) {
    let n = k.dim();
    for r in 0..n {
        for c in 0..n {
            k.add_to(r, c, theta * (y[r] * x[c] - x[r] * y[c]));
        }
    }
}
