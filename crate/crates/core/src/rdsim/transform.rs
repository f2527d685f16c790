use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rdsim::domain::{axis_function, eigenbasis, Boundary, DomainSpec, EigenBasis};
use crate::scalar::Real;

/// Midpoint collocation grid on one axis with the sampled eigenfunctions.
#[derive(Clone, Debug)]
struct AxisTable<T> {
    nodes: Vec<T>,
    weight: T,
    /// values[p * M + j] = φ_{k_p}(x_j).
    values: Vec<T>,
    wave_numbers: Vec<usize>,
}

impl<T: Real> AxisTable<T> {
    fn new(domain: &DomainSpec<T>, length: T, points: usize) -> Self {
        let weight = length / T::from_usize(points);
        let nodes: Vec<T> = (0..points).map(|j| (T::from_usize(j) + T::lit(0.5)) * weight).collect();
        let wave_numbers = domain.axis_wave_numbers();
        let values = wave_numbers
            .iter()
            .flat_map(|&k| nodes.iter().map(move |&x| axis_function(domain.bc, length, k, x)))
            .collect();
        Self { nodes, weight, values, wave_numbers }
    }

    fn points(&self) -> usize {
        self.nodes.len()
    }

    fn modes(&self) -> usize {
        self.wave_numbers.len()
    }

    /// c_p = w Σ_j φ_p(x_j) v_j over `stride`-separated values.
    fn analyze(&self, v: &[T], stride: usize, out: &mut [T], out_stride: usize) {
        let m = self.points();
        for p in 0..self.modes() {
            let row = &self.values[p * m..(p + 1) * m];
            let s: T = row.iter().enumerate().map(|(j, &phi)| phi * v[j * stride]).sum();
            out[p * out_stride] = s * self.weight;
        }
    }

    /// v_j = Σ_p c_p φ_p(x_j).
    fn synthesize(&self, c: &[T], stride: usize, out: &mut [T], out_stride: usize) {
        let m = self.points();
        for j in 0..m {
            let s: T = (0..self.modes()).map(|p| c[p * stride] * self.values[p * m + j]).sum();
            out[j * out_stride] = s;
        }
    }
}

/// Tensor midpoint grid and the exact coefficient ↔ value transform pair.
///
/// With M ≥ K points per axis the midpoint rule integrates products of two
/// retained eigenfunctions exactly, so the pair is an identity on band-limited
/// fields. M ≥ 2K removes aliasing of cubic nonlinearities.
#[derive(Clone, Debug)]
pub struct Collocation<T> {
    basis: EigenBasis<T>,
    axes: Vec<AxisTable<T>>,
    /// Per basis function: position of each wave number in the axis tables.
    slots: Vec<Vec<usize>>,
}

impl<T: Real> Collocation<T> {
    /// `points_per_axis` must exceed the largest retained wave number.
    pub fn new(domain: &DomainSpec<T>, points_per_axis: usize) -> Result<Self> {
        if points_per_axis < domain.modes + usize::from(domain.bc == Boundary::Dirichlet) {
            return Err(Error::InvalidParameter(format!(
                "{points_per_axis} collocation points cannot resolve {} modes",
                domain.modes
            )));
        }
        let basis = eigenbasis(domain);
        let axes: Vec<AxisTable<T>> =
            domain.lengths().into_iter().map(|l| AxisTable::new(domain, l, points_per_axis)).collect();
        let slots = basis
            .functions
            .iter()
            .map(|f| {
                f.wave_numbers
                    .iter()
                    .zip(&axes)
                    .map(|(k, ax)| ax.wave_numbers.iter().position(|q| q == k).expect("wave number on axis"))
                    .collect()
            })
            .collect();
        Ok(Self { basis, axes, slots })
    }

    /// Smallest grid on which cubic terms do not alias into retained modes:
    /// 2K points for Neumann, 2K + 1 for Dirichlet.
    pub fn dealiased(domain: &DomainSpec<T>) -> Result<Self> {
        Self::new(domain, dealiased_points(domain))
    }

    pub fn basis(&self) -> &EigenBasis<T> {
        &self.basis
    }

    pub fn points_per_axis(&self) -> usize {
        self.axes[0].points()
    }

    /// Total number of collocation points.
    pub fn len(&self) -> usize {
        self.axes.iter().map(AxisTable::points).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coordinates of point `j` (row-major over the axes).
    pub fn point(&self, j: usize) -> Vec<T> {
        match self.axes.as_slice() {
            [x] => vec![x.nodes[j]],
            [x, y] => vec![x.nodes[j / y.points()], y.nodes[j % y.points()]],
            _ => unreachable!("domains are one- or two-dimensional"),
        }
    }

    pub fn points(&self) -> Vec<Vec<T>> {
        (0..self.len()).map(|j| self.point(j)).collect()
    }

    /// Values on the grid → basis coefficients.
    pub fn forward(&self, values: &[T]) -> Vec<T> {
        match self.axes.as_slice() {
            [x] => {
                let mut c = vec![T::zero(); x.modes()];
                x.analyze(values, 1, &mut c, 1);
                self.gather(&c, 1)
            }
            [x, y] => {
                let my = y.points();
                let (kx, ky) = (x.modes(), y.modes());
                // Analyze along x for every y column, then along y.
                let mut tmp = vec![T::zero(); kx * my];
                for jy in 0..my {
                    x.analyze(&values[jy..], my, &mut tmp[jy..], my);
                }
                let mut c = vec![T::zero(); kx * ky];
                for p in 0..kx {
                    y.analyze(&tmp[p * my..], 1, &mut c[p * ky..], 1);
                }
                self.gather(&c, ky)
            }
            _ => unreachable!("domains are one- or two-dimensional"),
        }
    }

    /// Basis coefficients → values on the grid.
    pub fn inverse(&self, coeffs: &[T]) -> Vec<T> {
        match self.axes.as_slice() {
            [x] => {
                let c = self.scatter(coeffs, x.modes(), 1);
                let mut v = vec![T::zero(); x.points()];
                x.synthesize(&c, 1, &mut v, 1);
                v
            }
            [x, y] => {
                let (mx, my) = (x.points(), y.points());
                let (kx, ky) = (x.modes(), y.modes());
                let c = self.scatter(coeffs, kx, ky);
                let mut tmp = vec![T::zero(); kx * my];
                for p in 0..kx {
                    y.synthesize(&c[p * ky..], 1, &mut tmp[p * my..], 1);
                }
                let mut v = vec![T::zero(); mx * my];
                for jy in 0..my {
                    x.synthesize(&tmp[jy..], my, &mut v[jy..], my);
                }
                v
            }
            _ => unreachable!("domains are one- or two-dimensional"),
        }
    }

    fn gather(&self, tensor: &[T], ky: usize) -> Vec<T> {
        self.slots
            .iter()
            .map(|s| match s.as_slice() {
                [p] => tensor[*p],
                [p, q] => tensor[p * ky + q],
                _ => unreachable!(),
            })
            .collect()
    }

    fn scatter(&self, coeffs: &[T], kx: usize, ky: usize) -> Vec<T> {
        let mut tensor = vec![T::zero(); kx * ky];
        for (s, &c) in self.slots.iter().zip(coeffs) {
            match s.as_slice() {
                [p] => tensor[*p] = c,
                [p, q] => tensor[p * ky + q] = c,
                _ => unreachable!(),
            }
        }
        tensor
    }
}

pub(crate) fn dealiased_points<T: Real>(domain: &DomainSpec<T>) -> usize {
    2 * domain.modes + usize::from(domain.bc == Boundary::Dirichlet)
}

/// Vector-valued field u = Σ_b β_b w^b, stored as coefficients,
/// component-major: `coeffs[i * modes + b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Field<T> {
    components: usize,
    modes: usize,
    coeffs: Vec<T>,
}

impl<T: Real> Field<T> {
    pub fn from_coefficients(components: usize, modes: usize, coeffs: Vec<T>) -> Result<Self> {
        if components == 0 {
            return Err(Error::InvalidParameter("a field needs at least one component".into()));
        }
        if coeffs.len() != components * modes {
            return Err(Error::DimensionMismatch { expected: components * modes, found: coeffs.len() });
        }
        Ok(Self { components, modes, coeffs })
    }

    pub fn zeros(components: usize, modes: usize) -> Self {
        Self { components, modes, coeffs: vec![T::zero(); components * modes] }
    }

    /// Field equal to `amplitude[i]·w^b` in component i.
    pub fn single_mode(components: usize, modes: usize, b: usize, amplitude: &[T]) -> Result<Self> {
        if amplitude.len() != components {
            return Err(Error::DimensionMismatch { expected: components, found: amplitude.len() });
        }
        if b >= modes {
            return Err(Error::InvalidParameter(format!("mode {b} outside the basis of {modes}")));
        }
        let mut f = Self::zeros(components, modes);
        for (i, &a) in amplitude.iter().enumerate() {
            f.coeffs[i * modes + b] = a;
        }
        Ok(f)
    }

    /// Samples `f` on the collocation grid and projects onto the basis.
    pub fn from_fn(grid: &Collocation<T>, components: usize, f: impl Fn(&[T]) -> Vec<T>) -> Result<Self> {
        let samples: Vec<Vec<T>> = (0..grid.len()).map(|j| f(&grid.point(j))).collect();
        if let Some(bad) = samples.iter().find(|s| s.len() != components) {
            return Err(Error::DimensionMismatch { expected: components, found: bad.len() });
        }
        let per_component: Vec<Vec<T>> = (0..components).map(|i| samples.iter().map(|s| s[i]).collect()).collect();
        Self::from_values(grid, &per_component)
    }

    /// Projects collocated values (one vector per component).
    pub fn from_values(grid: &Collocation<T>, values: &[Vec<T>]) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| v.len() != grid.len()) {
            return Err(Error::DimensionMismatch { expected: grid.len(), found: bad.len() });
        }
        let coeffs: Vec<T> = values.par_iter().flat_map_iter(|v| grid.forward(v)).collect();
        Self::from_coefficients(values.len(), grid.basis().len(), coeffs)
    }

    /// Values on the collocation grid, one vector per component.
    pub fn values(&self, grid: &Collocation<T>) -> Vec<Vec<T>> {
        (0..self.components).into_par_iter().map(|i| grid.inverse(self.component(i))).collect()
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficients of component i.
    pub fn component(&self, i: usize) -> &[T] {
        &self.coeffs[i * self.modes..(i + 1) * self.modes]
    }

    /// (β_{1,b}, …, β_{n,b}).
    pub fn mode(&self, b: usize) -> Vec<T> {
        (0..self.components).map(|i| self.coeffs[i * self.modes + b]).collect()
    }

    /// Σ_i β_{i,b}².
    pub fn mode_energy(&self, b: usize) -> T {
        self.mode(b).iter().map(|&x| x * x).sum()
    }

    /// ‖u‖_{L²(Ω)}.
    pub fn l2_norm(&self) -> T {
        crate::fode::euclid(&self.coeffs)
    }
}
