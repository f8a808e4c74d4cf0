//! Double-double arithmetic and a one-sided Jacobi SVD on top of it.
//!
//! About 32 significant digits, enough to resolve products like `G T_k`
//! whose f64 evaluation loses everything once `sigma_k / sigma_1 < eps`.

#![allow(dead_code)]

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        // one Newton step from the f64 root
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let r = (self - Dd { hi: p, lo: e }).to_f64() / (2.0 * x);
        let (hi, lo) = quick_two_sum(x, r);
        Dd { hi, lo }
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };

    pub fn new(re: f64, im: f64) -> Cdd {
        Cdd {
            re: Dd::new(re),
            im: Dd::new(im),
        }
    }

    pub fn conj(self) -> Cdd {
        Cdd {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn norm_sqr(self) -> Dd {
        self.re * self.re + self.im * self.im
    }

    pub fn scale(self, s: Dd) -> Cdd {
        Cdd {
            re: self.re * s,
            im: self.im * s,
        }
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    fn sub(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

/// Dense column-major complex double-double matrix.
#[derive(Debug, Clone)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Cdd>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![Cdd::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cdd::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Cdd) -> Mat {
        let mut m = Mat::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> &[Cdd] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows);
        Mat::from_fn(self.rows, o.cols, |i, j| {
            (0..self.cols).fold(Cdd::ZERO, |acc, k| acc + self[(i, k)] * o[(k, j)])
        })
    }

    pub fn adjoint(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - o[(i, j)])
    }

    /// Largest singular value.
    pub fn norm2(&self) -> f64 {
        svd(self).1.first().map(|s| s.to_f64()).unwrap_or(0.0)
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Cdd;
    fn index(&self, (i, j): (usize, usize)) -> &Cdd {
        &self.data[j * self.rows + i]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cdd {
        &mut self.data[j * self.rows + i]
    }
}

fn dot(a: &[Cdd], b: &[Cdd]) -> Cdd {
    a.iter()
        .zip(b)
        .fold(Cdd::ZERO, |acc, (x, y)| acc + x.conj() * *y)
}

/// One-sided Jacobi SVD `a = U diag(s) V^H`, singular values descending.
pub fn svd(a: &Mat) -> (Mat, Vec<Dd>, Mat) {
    let (rows, cols) = (a.rows, a.cols);
    let mut w = a.clone();
    let mut v = Mat::identity(cols);
    let tol = 1e-31;
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = dot(w.col(p), w.col(p)).re;
                let beta = dot(w.col(q), w.col(q)).re;
                let g = dot(w.col(p), w.col(q));
                let gabs = g.norm_sqr().sqrt();
                if gabs.hi == 0.0 || gabs.hi <= tol * (alpha * beta).sqrt().hi {
                    continue;
                }
                rotated = true;
                // phase e^{-i phi} makes the inner product real
                let phase = Cdd {
                    re: g.re / gabs,
                    im: -(g.im / gabs),
                };
                let zeta = (beta - alpha) / (Dd::new(2.0) * gabs);
                let root = (Dd::ONE + zeta * zeta).sqrt();
                let t = if zeta.hi >= 0.0 {
                    Dd::ONE / (zeta + root)
                } else {
                    -(Dd::ONE / (root - zeta))
                };
                let c = (Dd::ONE + t * t).sqrt().recip();
                let s = c * t;
                rotate(&mut w, p, q, phase, c, s);
                rotate(&mut v, p, q, phase, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<(usize, Dd)> = (0..cols)
        .map(|j| (j, dot(w.col(j), w.col(j)).re.sqrt()))
        .collect();
    order.sort_by(|x, y| y.1.hi.total_cmp(&x.1.hi));
    let s: Vec<Dd> = order.iter().map(|o| o.1).collect();
    let u = Mat::from_fn(rows, cols, |i, k| {
        let (j, sj) = order[k];
        if sj.hi == 0.0 {
            Cdd::ZERO
        } else {
            w[(i, j)].scale(sj.recip())
        }
    });
    let vs = Mat::from_fn(cols, cols, |i, k| v[(i, order[k].0)]);
    (u, s, vs)
}

fn rotate(m: &mut Mat, p: usize, q: usize, phase: Cdd, c: Dd, s: Dd) {
    for i in 0..m.rows {
        let xp = m[(i, p)];
        let xq = m[(i, q)] * phase;
        m[(i, p)] = xp.scale(c) - xq.scale(s);
        m[(i, q)] = xp.scale(s) + xq.scale(c);
    }
}

/// `T_k = V_k diag(1 / s_k) U_k^H`.
pub fn truncated_inverse(u: &Mat, s: &[Dd], v: &Mat, k: usize) -> Mat {
    Mat::from_fn(v.rows, u.rows, |i, j| {
        (0..k).fold(Cdd::ZERO, |acc, l| {
            acc + (v[(i, l)] * u[(j, l)].conj()).scale(s[l].recip())
        })
    })
}
