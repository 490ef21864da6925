//! Finite measure spaces `(X, μ)` and densities with respect to `μ`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::sum::{canonical_sum, compensated_sum};
use crate::EPS_NORM;

/// A finite atomic measure space: atoms with strictly positive weights `μⱼ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSpace {
    atom_ids: Vec<String>,
    weights: Vec<f64>,
}

impl MeasureSpace {
    /// Builds a space with atoms labelled `0, 1, …`.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        let ids = (0..weights.len()).map(|i| format!("{i}")).collect();
        Self::with_ids(ids, weights)
    }

    pub fn with_ids(atom_ids: Vec<String>, weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptySpace);
        }
        if atom_ids.len() != weights.len() {
            return Err(Error::LengthMismatch { expected: weights.len(), found: atom_ids.len() });
        }
        if let Some((index, &value)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::NonpositiveWeight { index, value });
        }
        if !compensated_sum(weights.iter().copied()).is_finite() {
            return Err(Error::NonpositiveWeight { index: 0, value: f64::INFINITY });
        }
        Ok(Self { atom_ids, weights })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn atom_ids(&self) -> &[String] {
        &self.atom_ids
    }

    pub fn total_mass(&self) -> f64 {
        canonical_sum(self.weights.clone())
    }

    /// Whether `μ` is a probability measure, within [`EPS_NORM`].
    pub fn is_probability(&self) -> bool {
        (self.total_mass() - 1.0).abs() <= EPS_NORM
    }

    /// `Σⱼ valuesⱼ·μⱼ` with compensation, independent of atom order.
    pub fn integrate(&self, values: &[f64]) -> Result<f64> {
        self.check_len(values.len())?;
        Ok(canonical_sum(values.iter().zip(&self.weights).map(|(v, w)| v * w).collect()))
    }

    pub(crate) fn check_len(&self, found: usize) -> Result<()> {
        if found != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found });
        }
        Ok(())
    }
}

/// Validated space from raw weights; atom ids default to indices.
pub fn make_space(weights: &[f64]) -> Result<Arc<MeasureSpace>> {
    MeasureSpace::new(weights.to_vec()).map(Arc::new)
}

/// `Σⱼ valuesⱼ·μⱼ`.
pub fn integrate(space: &MeasureSpace, values: &[f64]) -> Result<f64> {
    space.integrate(values)
}

/// A strictly positive density with respect to `μ`.
#[derive(Debug, Clone)]
pub struct Density {
    space: Arc<MeasureSpace>,
    values: Vec<f64>,
    prob_certified: bool,
}

impl Density {
    pub fn new(space: Arc<MeasureSpace>, values: Vec<f64>, require_prob: bool) -> Result<Self> {
        space.check_len(values.len())?;
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::NonpositiveDensity { index, value });
        }
        if require_prob {
            let integral = space.integrate(&values)?;
            if (integral - 1.0).abs() > EPS_NORM {
                return Err(Error::NotNormalized { integral });
            }
        }
        Ok(Self { space, values, prob_certified: require_prob })
    }

    pub fn space(&self) -> &Arc<MeasureSpace> {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_probability(&self) -> bool {
        self.prob_certified
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn integral(&self) -> f64 {
        // lengths were checked at construction
        self.space.integrate(&self.values).unwrap_or(f64::NAN)
    }

    pub fn same_space(&self, other: &Density) -> bool {
        same_space(&self.space, &other.space)
    }
}

pub(crate) fn same_space(a: &Arc<MeasureSpace>, b: &Arc<MeasureSpace>) -> bool {
    Arc::ptr_eq(a, b) || a.weights == b.weights
}

/// Checks `values` against `space`; `prob_certified` is set to `require_prob`.
pub fn validate_density(space: &Arc<MeasureSpace>, values: &[f64], require_prob: bool) -> Result<Density> {
    Density::new(Arc::clone(space), values.to_vec(), require_prob)
}

/// An ordered list of densities over one space.
#[derive(Debug, Clone)]
pub struct MeasureVector {
    densities: Vec<Density>,
}

impl MeasureVector {
    pub fn new(densities: Vec<Density>) -> Result<Self> {
        let first = densities.first().ok_or(Error::MixedArityZero)?;
        if densities.iter().any(|d| !d.same_space(first)) {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self { densities })
    }

    pub fn densities(&self) -> &[Density] {
        &self.densities
    }

    pub fn len(&self) -> usize {
        self.densities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.densities.is_empty()
    }

    pub fn space(&self) -> &Arc<MeasureSpace> {
        self.densities[0].space()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn uniform_counting_space() {
        let s = make_space(&[1.0, 1.0]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.total_mass(), 2.0);
        assert_eq!(s.atom_ids(), &["0", "1"]);
    }

    #[test]
    fn probability_base_measure() {
        let s = make_space(&[0.5, 0.25, 0.25]).unwrap();
        assert_eq!(s.total_mass(), 1.0);
        assert!(s.is_probability());
    }

    #[test]
    fn rejects_zero_weight() {
        assert_eq!(make_space(&[1.0, 0.0]).unwrap_err(), Error::NonpositiveWeight { index: 1, value: 0.0 });
        assert_eq!(make_space(&[]).unwrap_err(), Error::EmptySpace);
        assert!(matches!(make_space(&[1.0, f64::NAN]), Err(Error::NonpositiveWeight { index: 1, .. })));
    }

    #[test]
    fn density_validation() {
        let s = make_space(&[1.0, 1.0]).unwrap();
        let d = validate_density(&s, &[0.5, 0.5], true).unwrap();
        assert!(d.is_probability());
        assert!(matches!(
            validate_density(&s, &[0.5, 0.6], true),
            Err(Error::NotNormalized { integral }) if (integral - 1.1).abs() < 1e-15
        ));
        let cone = validate_density(&s, &[2.0, 3.0], false).unwrap();
        assert!(!cone.is_probability());
        assert_eq!(cone.integral(), 5.0);
        assert!(matches!(validate_density(&s, &[0.5, 0.0], false), Err(Error::NonpositiveDensity { index: 1, .. })));
        assert!(matches!(validate_density(&s, &[0.5], false), Err(Error::LengthMismatch { expected: 2, found: 1 })));
    }

    #[test]
    fn integrate_examples() {
        let s = make_space(&[1.0, 1.0]).unwrap();
        assert_eq!(integrate(&s, &[0.5, 0.5]).unwrap(), 1.0);
        assert_eq!(integrate(&s, &[0.3466, 0.0]).unwrap(), 0.3466);
        let s = make_space(&[0.5, 0.25, 0.25]).unwrap();
        assert_eq!(integrate(&s, &[1.0, 1.0, 1.0]).unwrap(), 1.0);
        assert!(integrate(&s, &[1.0]).is_err());
    }

    #[test]
    fn measure_vector_requires_shared_space() {
        let a = make_space(&[1.0, 1.0]).unwrap();
        let b = make_space(&[1.0, 2.0]).unwrap();
        let da = validate_density(&a, &[0.5, 0.5], true).unwrap();
        let db = validate_density(&b, &[0.5, 0.25], false).unwrap();
        assert!(MeasureVector::new(vec![da.clone(), da.clone()]).is_ok());
        assert_eq!(MeasureVector::new(vec![da, db]).unwrap_err(), Error::SpaceMismatch);
        assert_eq!(MeasureVector::new(vec![]).unwrap_err(), Error::MixedArityZero);
    }
}
