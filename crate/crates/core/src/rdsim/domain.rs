use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::io::json_real;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape<T> {
    Interval(T),
    Rectangle(T, T),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    Dirichlet,
    Neumann,
}

impl Boundary {
    pub fn as_str(&self) -> &'static str {
        match self {
            Boundary::Dirichlet => "dirichlet",
            Boundary::Neumann => "neumann",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dirichlet" => Some(Boundary::Dirichlet),
            "neumann" => Some(Boundary::Neumann),
            _ => None,
        }
    }
}

/// Interval [0, L] or rectangle [0, Lx] × [0, Ly] with homogeneous boundary
/// conditions, truncated to `modes` Laplacian eigenfunctions per axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DomainSpec<T> {
    pub shape: Shape<T>,
    pub bc: Boundary,
    pub modes: usize,
}

impl<T: Real> DomainSpec<T> {
    pub fn new(shape: Shape<T>, bc: Boundary, modes: usize) -> Result<Self> {
        let lengths = match shape {
            Shape::Interval(l) => vec![l],
            Shape::Rectangle(lx, ly) => vec![lx, ly],
        };
        if lengths.iter().any(|&l| !(l > T::zero() && l.is_finite())) {
            return Err(Error::InvalidParameter("domain side lengths must be positive".into()));
        }
        if modes == 0 {
            return Err(Error::InvalidParameter("at least one mode per axis is required".into()));
        }
        Ok(Self { shape, bc, modes })
    }

    pub fn interval(length: T, bc: Boundary, modes: usize) -> Result<Self> {
        Self::new(Shape::Interval(length), bc, modes)
    }

    pub fn rectangle(lx: T, ly: T, bc: Boundary, modes: usize) -> Result<Self> {
        Self::new(Shape::Rectangle(lx, ly), bc, modes)
    }

    pub fn lengths(&self) -> Vec<T> {
        match self.shape {
            Shape::Interval(l) => vec![l],
            Shape::Rectangle(lx, ly) => vec![lx, ly],
        }
    }

    pub fn spatial_dim(&self) -> usize {
        self.lengths().len()
    }

    /// Lebesgue measure |Ω|.
    pub fn measure(&self) -> T {
        self.lengths().into_iter().fold(T::one(), |a, l| a * l)
    }

    /// Wave numbers used along each axis: 0..K for Neumann, 1..=K for Dirichlet.
    pub fn axis_wave_numbers(&self) -> Vec<usize> {
        match self.bc {
            Boundary::Neumann => (0..self.modes).collect(),
            Boundary::Dirichlet => (1..=self.modes).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let shape = match self.shape {
            Shape::Interval(l) => json!({"kind": "interval", "length": json_real(l)}),
            Shape::Rectangle(lx, ly) => json!({"kind": "rectangle", "lx": json_real(lx), "ly": json_real(ly)}),
        };
        json!({"shape": shape, "bc": self.bc.as_str(), "modes": self.modes})
    }
}

/// Normalized one-dimensional eigenfunction of −d²/dx² on [0, L].
pub(crate) fn axis_function<T: Real>(bc: Boundary, length: T, k: usize, x: T) -> T {
    let two = T::lit(2.0);
    let arg = T::from_usize(k) * T::PI() * x / length;
    match bc {
        Boundary::Neumann if k == 0 => length.recip().sqrt(),
        Boundary::Neumann => (two / length).sqrt() * arg.cos(),
        Boundary::Dirichlet => (two / length).sqrt() * arg.sin(),
    }
}

/// One Laplacian eigenpair: wave numbers per axis and μ = Σ (k_i π / L_i)².
#[derive(Clone, Debug, PartialEq)]
pub struct BasisFunction<T> {
    pub wave_numbers: Vec<usize>,
    pub mu: T,
}

/// Truncated L²-orthonormal eigenbasis, sorted by nondecreasing μ.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenBasis<T> {
    pub domain: DomainSpec<T>,
    pub functions: Vec<BasisFunction<T>>,
}

impl<T: Real> EigenBasis<T> {
    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn mus(&self) -> Vec<T> {
        self.functions.iter().map(|f| f.mu).collect()
    }

    /// w^b(x).
    pub fn eval(&self, b: usize, x: &[T]) -> T {
        let lengths = self.domain.lengths();
        self.functions[b]
            .wave_numbers
            .iter()
            .zip(lengths.iter().zip(x))
            .fold(T::one(), |acc, (&k, (&l, &xi))| acc * axis_function(self.domain.bc, l, k, xi))
    }

    /// ∫_Ω w^b.
    pub fn integral(&self, b: usize) -> T {
        let bc = self.domain.bc;
        self.functions[b].wave_numbers.iter().zip(self.domain.lengths()).fold(T::one(), |acc, (&k, l)| {
            let axis = match bc {
                Boundary::Neumann if k == 0 => l.sqrt(),
                Boundary::Neumann => T::zero(),
                Boundary::Dirichlet if k % 2 == 0 => T::zero(),
                Boundary::Dirichlet => (T::lit(2.0) / l).sqrt() * T::lit(2.0) * l / (T::from_usize(k) * T::PI()),
            };
            acc * axis
        })
    }

    /// Index of the basis function with the given wave numbers.
    pub fn position(&self, wave_numbers: &[usize]) -> Option<usize> {
        self.functions.iter().position(|f| f.wave_numbers == wave_numbers)
    }
}

pub fn eigenbasis<T: Real>(domain: &DomainSpec<T>) -> EigenBasis<T> {
    let ks = domain.axis_wave_numbers();
    let axis_mu = |k: usize, l: T| {
        let w = T::from_usize(k) * T::PI() / l;
        w * w
    };
    let mut functions: Vec<BasisFunction<T>> = match domain.shape {
        Shape::Interval(l) => ks.iter().map(|&k| BasisFunction { wave_numbers: vec![k], mu: axis_mu(k, l) }).collect(),
        Shape::Rectangle(lx, ly) => ks
            .iter()
            .flat_map(|&k| {
                ks.iter().map(move |&m| BasisFunction { wave_numbers: vec![k, m], mu: axis_mu(k, lx) + axis_mu(m, ly) })
            })
            .collect(),
    };
    functions.sort_by(|a, b| a.mu.partial_cmp(&b.mu).unwrap_or(std::cmp::Ordering::Equal));
    EigenBasis { domain: *domain, functions }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn interval_eigenvalues() {
        let nb = eigenbasis(&DomainSpec::interval(PI, Boundary::Neumann, 3).unwrap());
        let mus = nb.mus();
        for (m, e) in mus.iter().zip([0.0, 1.0, 4.0]) {
            assert!((m - e).abs() < 1e-14);
        }
        let db = eigenbasis(&DomainSpec::interval(1.0, Boundary::Dirichlet, 2).unwrap());
        assert!((db.mus()[0] - PI * PI).abs() < 1e-12);
        assert!((db.mus()[1] - 4.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn rectangle_sorted_sums() {
        let b = eigenbasis(&DomainSpec::rectangle(PI, PI, Boundary::Neumann, 3).unwrap());
        let mus: Vec<f64> = b.mus();
        let mut expected: Vec<f64> = (0..3).flat_map(|k| (0..3).map(move |l| (k * k + l * l) as f64)).collect();
        expected.sort_by(f64::total_cmp);
        assert_eq!(b.len(), 9);
        for (m, e) in mus.iter().zip(&expected) {
            assert!((m - e).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_mode_is_normalized() {
        let b = eigenbasis(&DomainSpec::rectangle(2.0, 3.0, Boundary::Neumann, 2).unwrap());
        assert!((b.eval(0, &[0.3, 1.1]) - 1.0 / 6.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn integrals_of_basis_functions() {
        let b = eigenbasis(&DomainSpec::interval(2.0, Boundary::Dirichlet, 3).unwrap());
        // ∫₀² sin(πx/2) dx = 4/π.
        assert!((b.integral(0) - 4.0 / PI).abs() < 1e-15);
        assert_eq!(b.integral(1), 0.0);
        let n = eigenbasis(&DomainSpec::interval(2.0, Boundary::Neumann, 3).unwrap());
        assert!((n.integral(0) - 2.0f64.sqrt()).abs() < 1e-15);
        assert_eq!(n.integral(2), 0.0);
    }

    #[test]
    fn rejects_bad_domains() {
        assert!(DomainSpec::interval(0.0, Boundary::Neumann, 3).is_err());
        assert!(DomainSpec::interval(1.0, Boundary::Neumann, 0).is_err());
        assert!(DomainSpec::rectangle(1.0, -1.0, Boundary::Dirichlet, 2).is_err());
    }
}
