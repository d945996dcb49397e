//! Forward-mode automatic differentiation truncated at second order.
//!
//! Three fixed jet shapes carry a value together with every first and
//! second partial derivative in one, two or three variables:
//!
//! * [`UniJet`]: `v, d1, d2`
//! * [`BiJet`]: `v, du, dv, duu, duv, dvv`
//! * [`TriJet`]: `v, dx, dy, dz, dxx, dxy, dxz, dyy, dyz, dzz`
//!
//! The mixed partials live in a single slot, so their symmetry is
//! structural. [`Dual2`] is a first-order dual number in two variables
//! over any [`Real`]; nesting `Dual2<BiJet>` yields the third-order
//! information needed to differentiate metric coefficients twice.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use thiserror::Error;

/// Failures of jet arithmetic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("variable index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
}

fn domain(msg: impl Into<String>) -> JetError {
    JetError::Domain(msg.into())
}

/// Scalar type that the expression evaluator and the geometry code are
/// generic over: plain `f64`, the three jet shapes, and [`Dual2`].
///
/// Operators follow IEEE semantics; the `checked_*` and elementary
/// function methods report domain violations instead.
pub trait Real:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn constant(c: f64) -> Self;
    fn value(&self) -> f64;
    /// True when every derivative slot is zero.
    fn is_constant(&self) -> bool;

    fn recip(self) -> Result<Self, JetError>;
    fn checked_div(self, rhs: Self) -> Result<Self, JetError> {
        Ok(self * rhs.recip()?)
    }

    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn tan(self) -> Result<Self, JetError>;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn tanh(self) -> Self;
    fn exp(self) -> Self;
    fn atan(self) -> Self;
    fn ln(self) -> Result<Self, JetError>;
    fn sqrt(self) -> Result<Self, JetError>;
    fn powi(self, n: i32) -> Result<Self, JetError>;
    /// Real power with a constant exponent; requires a positive base.
    fn powf(self, e: f64) -> Result<Self, JetError>;

    /// `self ^ e`. Constant integral exponents go through [`Real::powi`]
    /// (negative bases allowed), constant fractional ones through
    /// [`Real::powf`], and anything else through `exp(e ln self)`.
    fn pow(self, e: Self) -> Result<Self, JetError> {
        if e.is_constant() {
            let x = e.value();
            if x.fract() == 0.0 && x.abs() <= i32::MAX as f64 {
                self.powi(x as i32)
            } else {
                self.powf(x)
            }
        } else {
            if self.value() <= 0.0 {
                return Err(domain("variable exponent requires a positive base"));
            }
            Ok((e * self.ln()?).exp())
        }
    }

    fn square(self) -> Self {
        self * self
    }
}

impl Real for f64 {
    fn constant(c: f64) -> Self {
        c
    }
    fn value(&self) -> f64 {
        *self
    }
    fn is_constant(&self) -> bool {
        true
    }
    fn recip(self) -> Result<Self, JetError> {
        if self == 0.0 {
            Err(JetError::DivisionByZero)
        } else {
            Ok(1.0 / self)
        }
    }
    fn checked_div(self, rhs: Self) -> Result<Self, JetError> {
        if rhs == 0.0 {
            Err(JetError::DivisionByZero)
        } else {
            Ok(self / rhs)
        }
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn tan(self) -> Result<Self, JetError> {
        if f64::cos(self) == 0.0 {
            return Err(domain("tan at a pole"));
        }
        Ok(f64::tan(self))
    }
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
    fn tanh(self) -> Self {
        f64::tanh(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn atan(self) -> Self {
        f64::atan(self)
    }
    fn ln(self) -> Result<Self, JetError> {
        if self <= 0.0 {
            return Err(domain(format!("log of non-positive value {self}")));
        }
        Ok(f64::ln(self))
    }
    fn sqrt(self) -> Result<Self, JetError> {
        // Zero is rejected as well: every consumer divides by the root.
        if self <= 0.0 {
            return Err(domain(format!("sqrt of non-positive value {self}")));
        }
        Ok(f64::sqrt(self))
    }
    fn powi(self, n: i32) -> Result<Self, JetError> {
        if n < 0 && self == 0.0 {
            return Err(JetError::DivisionByZero);
        }
        Ok(f64::powi(self, n))
    }
    fn powf(self, e: f64) -> Result<Self, JetError> {
        if self <= 0.0 {
            return Err(domain(format!("fractional power of non-positive value {self}")));
        }
        Ok(f64::powf(self, e))
    }
}

/// Value, first and second derivative of an elementary function at a point.
#[derive(Debug, Clone, Copy)]
struct Taylor {
    f0: f64,
    f1: f64,
    f2: f64,
}

impl Taylor {
    fn sin(x: f64) -> Self {
        let (s, c) = x.sin_cos();
        Taylor { f0: s, f1: c, f2: -s }
    }
    fn cos(x: f64) -> Self {
        let (s, c) = x.sin_cos();
        Taylor { f0: c, f1: -s, f2: -c }
    }
    fn tan(x: f64) -> Result<Self, JetError> {
        let t = Real::tan(x)?;
        let sec2 = 1.0 + t * t;
        Ok(Taylor { f0: t, f1: sec2, f2: 2.0 * t * sec2 })
    }
    fn sinh(x: f64) -> Self {
        Taylor { f0: x.sinh(), f1: x.cosh(), f2: x.sinh() }
    }
    fn cosh(x: f64) -> Self {
        Taylor { f0: x.cosh(), f1: x.sinh(), f2: x.cosh() }
    }
    fn tanh(x: f64) -> Self {
        let t = x.tanh();
        let sech2 = 1.0 - t * t;
        Taylor { f0: t, f1: sech2, f2: -2.0 * t * sech2 }
    }
    fn exp(x: f64) -> Self {
        let e = x.exp();
        Taylor { f0: e, f1: e, f2: e }
    }
    fn atan(x: f64) -> Self {
        let d = 1.0 / (1.0 + x * x);
        Taylor { f0: x.atan(), f1: d, f2: -2.0 * x * d * d }
    }
    fn ln(x: f64) -> Result<Self, JetError> {
        let l = Real::ln(x)?;
        Ok(Taylor { f0: l, f1: 1.0 / x, f2: -1.0 / (x * x) })
    }
    fn sqrt(x: f64) -> Result<Self, JetError> {
        let r = Real::sqrt(x)?;
        Ok(Taylor { f0: r, f1: 0.5 / r, f2: -0.25 / (r * x) })
    }
    fn recip(x: f64) -> Result<Self, JetError> {
        let r = Real::recip(x)?;
        Ok(Taylor { f0: r, f1: -r * r, f2: 2.0 * r * r * r })
    }
    fn powi(x: f64, n: i32) -> Result<Self, JetError> {
        if n == 0 {
            return Ok(Taylor { f0: 1.0, f1: 0.0, f2: 0.0 });
        }
        let f0 = Real::powi(x, n)?;
        let f1 = n as f64 * Real::powi(x, n - 1)?;
        let f2 = if n == 1 {
            0.0
        } else {
            (n as f64) * (n as f64 - 1.0) * Real::powi(x, n - 2)?
        };
        Ok(Taylor { f0, f1, f2 })
    }
    fn powf(x: f64, e: f64) -> Result<Self, JetError> {
        let f0 = Real::powf(x, e)?;
        Ok(Taylor {
            f0,
            f1: e * x.powf(e - 1.0),
            f2: e * (e - 1.0) * x.powf(e - 2.0),
        })
    }
}

macro_rules! second_order_jet {
    (
        $(#[$meta:meta])*
        $name:ident, arity = $arity:expr,
        first { $($g:ident),+ },
        second { $($h:ident = ($hi:ident, $hj:ident)),+ }
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Default)]
        pub struct $name {
            pub v: f64,
            $(pub $g: f64,)+
            $(pub $h: f64,)+
        }

        impl $name {
            pub const ARITY: usize = $arity;

            pub fn constant(v: f64) -> Self {
                Self { v, ..Default::default() }
            }

            /// Jet of the coordinate function number `index` evaluated at `value`.
            pub fn seed(index: usize, value: f64) -> Result<Self, JetError> {
                let mut jet = Self::constant(value);
                let mut slot = 0usize;
                let mut found = false;
                $(
                    if slot == index {
                        jet.$g = 1.0;
                        found = true;
                    }
                    slot += 1;
                )+
                let _ = slot;
                if found {
                    Ok(jet)
                } else {
                    Err(JetError::IndexOutOfRange { index, arity: $arity })
                }
            }

            /// First partials in variable order.
            pub fn first(&self) -> Vec<f64> {
                vec![$(self.$g),+]
            }

            /// Second partials, upper triangle in row-major order.
            pub fn second(&self) -> Vec<f64> {
                vec![$(self.$h),+]
            }

            fn chain(self, t: Taylor) -> Self {
                let a = self;
                Self {
                    v: t.f0,
                    $($g: t.f1 * a.$g,)+
                    $($h: t.f1 * a.$h + t.f2 * a.$hi * a.$hj,)+
                }
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(self, b: Self) -> Self {
                Self { v: self.v + b.v, $($g: self.$g + b.$g,)+ $($h: self.$h + b.$h,)+ }
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, b: Self) -> Self {
                Self { v: self.v - b.v, $($g: self.$g - b.$g,)+ $($h: self.$h - b.$h,)+ }
            }
        }

        impl Neg for $name {
            type Output = Self;
            fn neg(self) -> Self {
                Self { v: -self.v, $($g: -self.$g,)+ $($h: -self.$h,)+ }
            }
        }

        impl Mul for $name {
            type Output = Self;
            fn mul(self, b: Self) -> Self {
                let a = self;
                Self {
                    v: a.v * b.v,
                    $($g: a.v * b.$g + b.v * a.$g,)+
                    $($h: a.v * b.$h + b.v * a.$h + a.$hi * b.$hj + a.$hj * b.$hi,)+
                }
            }
        }

        impl Div for $name {
            type Output = Self;
            fn div(self, b: Self) -> Self {
                let r = 1.0 / b.v;
                self * b.chain(Taylor { f0: r, f1: -r * r, f2: 2.0 * r * r * r })
            }
        }

        impl Add<f64> for $name {
            type Output = Self;
            fn add(mut self, c: f64) -> Self {
                self.v += c;
                self
            }
        }

        impl Sub<f64> for $name {
            type Output = Self;
            fn sub(mut self, c: f64) -> Self {
                self.v -= c;
                self
            }
        }

        impl Mul<f64> for $name {
            type Output = Self;
            fn mul(self, c: f64) -> Self {
                Self { v: self.v * c, $($g: self.$g * c,)+ $($h: self.$h * c,)+ }
            }
        }

        impl Div<f64> for $name {
            type Output = Self;
            fn div(self, c: f64) -> Self {
                Self { v: self.v / c, $($g: self.$g / c,)+ $($h: self.$h / c,)+ }
            }
        }

        impl Add<$name> for f64 {
            type Output = $name;
            fn add(self, j: $name) -> $name {
                j + self
            }
        }

        impl Sub<$name> for f64 {
            type Output = $name;
            fn sub(self, j: $name) -> $name {
                -j + self
            }
        }

        impl Mul<$name> for f64 {
            type Output = $name;
            fn mul(self, j: $name) -> $name {
                j * self
            }
        }

        impl Real for $name {
            fn constant(c: f64) -> Self {
                $name::constant(c)
            }
            fn value(&self) -> f64 {
                self.v
            }
            fn is_constant(&self) -> bool {
                true $(&& self.$g == 0.0)+ $(&& self.$h == 0.0)+
            }
            fn recip(self) -> Result<Self, JetError> {
                Ok(self.chain(Taylor::recip(self.v)?))
            }
            fn sin(self) -> Self {
                self.chain(Taylor::sin(self.v))
            }
            fn cos(self) -> Self {
                self.chain(Taylor::cos(self.v))
            }
            fn tan(self) -> Result<Self, JetError> {
                Ok(self.chain(Taylor::tan(self.v)?))
            }
            fn sinh(self) -> Self {
                self.chain(Taylor::sinh(self.v))
            }
            fn cosh(self) -> Self {
                self.chain(Taylor::cosh(self.v))
            }
            fn tanh(self) -> Self {
                self.chain(Taylor::tanh(self.v))
            }
            fn exp(self) -> Self {
                self.chain(Taylor::exp(self.v))
            }
            fn atan(self) -> Self {
                self.chain(Taylor::atan(self.v))
            }
            fn ln(self) -> Result<Self, JetError> {
                Ok(self.chain(Taylor::ln(self.v)?))
            }
            fn sqrt(self) -> Result<Self, JetError> {
                Ok(self.chain(Taylor::sqrt(self.v)?))
            }
            fn powi(self, n: i32) -> Result<Self, JetError> {
                Ok(self.chain(Taylor::powi(self.v, n)?))
            }
            fn powf(self, e: f64) -> Result<Self, JetError> {
                Ok(self.chain(Taylor::powf(self.v, e)?))
            }
        }
    };
}

second_order_jet! {
    /// Second-order jet in one variable.
    UniJet, arity = 1,
    first { d1 },
    second { d2 = (d1, d1) }
}

second_order_jet! {
    /// Second-order jet in two variables `(u, v)`, also used for `(p, q)`
    /// and `(x, y)`.
    BiJet, arity = 2,
    first { du, dv },
    second { duu = (du, du), duv = (du, dv), dvv = (dv, dv) }
}

second_order_jet! {
    /// Second-order jet in three variables `(x, y, z)`.
    TriJet, arity = 3,
    first { dx, dy, dz },
    second {
        dxx = (dx, dx), dxy = (dx, dy), dxz = (dx, dz),
        dyy = (dy, dy), dyz = (dy, dz), dzz = (dz, dz)
    }
}

impl UniJet {
    pub fn var(x: f64) -> Self {
        Self { v: x, d1: 1.0, d2: 0.0 }
    }
}

impl BiJet {
    pub fn var_u(u: f64) -> Self {
        Self { v: u, du: 1.0, ..Default::default() }
    }
    pub fn var_v(v: f64) -> Self {
        Self { v, dv: 1.0, ..Default::default() }
    }
}

impl TriJet {
    pub fn vars(x: f64, y: f64, z: f64) -> [Self; 3] {
        [
            Self { v: x, dx: 1.0, ..Default::default() },
            Self { v: y, dy: 1.0, ..Default::default() },
            Self { v: z, dz: 1.0, ..Default::default() },
        ]
    }
}

/// First-order dual number in two directions `(p, q)` with coefficients
/// in any [`Real`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual2<T> {
    pub v: T,
    pub dp: T,
    pub dq: T,
}

impl<T: Real> Dual2<T> {
    pub fn new(v: T, dp: T, dq: T) -> Self {
        Self { v, dp, dq }
    }

    fn lift(self, f0: T, f1: T) -> Self {
        Self { v: f0, dp: f1 * self.dp, dq: f1 * self.dq }
    }
}

impl Dual2<BiJet> {
    /// Seeds `(p, q)` so that the `v` slot carries the coordinate as a
    /// [`BiJet`] and the dual slots carry the unit tangent directions.
    pub fn seed_pq(p: f64, q: f64) -> [Self; 2] {
        let one = BiJet::constant(1.0);
        let zero = BiJet::constant(0.0);
        [
            Dual2::new(BiJet::var_u(p), one, zero),
            Dual2::new(BiJet::var_v(q), zero, one),
        ]
    }
}

impl<T: Real> Add for Dual2<T> {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        Self { v: self.v + b.v, dp: self.dp + b.dp, dq: self.dq + b.dq }
    }
}

impl<T: Real> Sub for Dual2<T> {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        Self { v: self.v - b.v, dp: self.dp - b.dp, dq: self.dq - b.dq }
    }
}

impl<T: Real> Neg for Dual2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { v: -self.v, dp: -self.dp, dq: -self.dq }
    }
}

impl<T: Real> Mul for Dual2<T> {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        Self {
            v: self.v * b.v,
            dp: self.v * b.dp + self.dp * b.v,
            dq: self.v * b.dq + self.dq * b.v,
        }
    }
}

impl<T: Real> Div for Dual2<T> {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let r = T::constant(1.0) / b.v;
        self * b.lift(r, -(r * r))
    }
}

impl<T: Real> Add<f64> for Dual2<T> {
    type Output = Self;
    fn add(mut self, c: f64) -> Self {
        self.v = self.v + c;
        self
    }
}

impl<T: Real> Sub<f64> for Dual2<T> {
    type Output = Self;
    fn sub(mut self, c: f64) -> Self {
        self.v = self.v - c;
        self
    }
}

impl<T: Real> Mul<f64> for Dual2<T> {
    type Output = Self;
    fn mul(self, c: f64) -> Self {
        Self { v: self.v * c, dp: self.dp * c, dq: self.dq * c }
    }
}

impl<T: Real> Div<f64> for Dual2<T> {
    type Output = Self;
    fn div(self, c: f64) -> Self {
        Self { v: self.v / c, dp: self.dp / c, dq: self.dq / c }
    }
}

impl<T: Real> Real for Dual2<T> {
    fn constant(c: f64) -> Self {
        Self { v: T::constant(c), dp: T::constant(0.0), dq: T::constant(0.0) }
    }
    fn value(&self) -> f64 {
        self.v.value()
    }
    fn is_constant(&self) -> bool {
        let zero = |t: &T| t.is_constant() && t.value() == 0.0;
        self.v.is_constant() && zero(&self.dp) && zero(&self.dq)
    }
    fn recip(self) -> Result<Self, JetError> {
        let r = self.v.recip()?;
        Ok(self.lift(r, -(r * r)))
    }
    fn sin(self) -> Self {
        self.lift(self.v.sin(), self.v.cos())
    }
    fn cos(self) -> Self {
        self.lift(self.v.cos(), -self.v.sin())
    }
    fn tan(self) -> Result<Self, JetError> {
        let t = self.v.tan()?;
        Ok(self.lift(t, t * t + 1.0))
    }
    fn sinh(self) -> Self {
        self.lift(self.v.sinh(), self.v.cosh())
    }
    fn cosh(self) -> Self {
        self.lift(self.v.cosh(), self.v.sinh())
    }
    fn tanh(self) -> Self {
        let t = self.v.tanh();
        self.lift(t, -(t * t) + 1.0)
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        self.lift(e, e)
    }
    fn atan(self) -> Self {
        let d = (self.v * self.v + 1.0)
            .recip()
            .expect("1 + x^2 is positive");
        self.lift(self.v.atan(), d)
    }
    fn ln(self) -> Result<Self, JetError> {
        let l = self.v.ln()?;
        Ok(self.lift(l, self.v.recip()?))
    }
    fn sqrt(self) -> Result<Self, JetError> {
        let r = self.v.sqrt()?;
        Ok(self.lift(r, (r * 2.0).recip()?))
    }
    fn powi(self, n: i32) -> Result<Self, JetError> {
        if n == 0 {
            return Ok(Self::constant(1.0));
        }
        let f0 = self.v.powi(n)?;
        let f1 = self.v.powi(n - 1)? * n as f64;
        Ok(self.lift(f0, f1))
    }
    fn powf(self, e: f64) -> Result<Self, JetError> {
        let f0 = self.v.powf(e)?;
        let f1 = self.v.powf(e - 1.0)? * e;
        Ok(self.lift(f0, f1))
    }
}

/// Central-difference estimates of first and second partials.
///
/// This is an independent reference for testing the jets; its truncation
/// error is `O(h^2)` and the caller owns the step choice.
pub mod fd {
    use super::{BiJet, TriJet, UniJet};

    fn stencil<const N: usize>(
        f: &dyn Fn(&[f64; N]) -> f64,
        at: [f64; N],
        h: f64,
    ) -> (f64, [f64; N], [[f64; N]; N]) {
        let shifted = |moves: &[(usize, f64)]| {
            let mut x = at;
            for &(i, s) in moves {
                x[i] += s * h;
            }
            f(&x)
        };
        let f0 = f(&at);
        let mut grad = [0.0; N];
        let mut hess = [[0.0; N]; N];
        for i in 0..N {
            let fp = shifted(&[(i, 1.0)]);
            let fm = shifted(&[(i, -1.0)]);
            grad[i] = (fp - fm) / (2.0 * h);
            hess[i][i] = (fp - 2.0 * f0 + fm) / (h * h);
            for j in (i + 1)..N {
                let mixed = (shifted(&[(i, 1.0), (j, 1.0)])
                    - shifted(&[(i, 1.0), (j, -1.0)])
                    - shifted(&[(i, -1.0), (j, 1.0)])
                    + shifted(&[(i, -1.0), (j, -1.0)]))
                    / (4.0 * h * h);
                hess[i][j] = mixed;
                hess[j][i] = mixed;
            }
        }
        (f0, grad, hess)
    }

    pub fn uni(f: impl Fn(f64) -> f64, x: f64, h: f64) -> UniJet {
        let (v, g, hs) = stencil::<1>(&|a| f(a[0]), [x], h);
        UniJet { v, d1: g[0], d2: hs[0][0] }
    }

    pub fn bi(f: impl Fn(f64, f64) -> f64, at: [f64; 2], h: f64) -> BiJet {
        let (v, g, hs) = stencil::<2>(&|a| f(a[0], a[1]), at, h);
        BiJet { v, du: g[0], dv: g[1], duu: hs[0][0], duv: hs[0][1], dvv: hs[1][1] }
    }

    pub fn tri(f: impl Fn(f64, f64, f64) -> f64, at: [f64; 3], h: f64) -> TriJet {
        let (v, g, hs) = stencil::<3>(&|a| f(a[0], a[1], a[2]), at, h);
        TriJet {
            v,
            dx: g[0],
            dy: g[1],
            dz: g[2],
            dxx: hs[0][0],
            dxy: hs[0][1],
            dxz: hs[0][2],
            dyy: hs[1][1],
            dyz: hs[1][2],
            dzz: hs[2][2],
        }
    }
}
