//! Discrete power profiles.

use crate::{Result, TransformError};

const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Discrete spectral distribution of received powers.
///
/// Atoms are `(power, weight)` pairs. The constructor sorts atoms ascending
/// by power, merges duplicate powers by summing their weights, and requires
/// the weights to sum to one within `1e-12` (they are renormalized exactly
/// afterwards).
#[derive(Debug, Clone, PartialEq)]
pub struct PowerProfile {
    atoms: Vec<(f64, f64)>,
}

impl PowerProfile {
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(TransformError::OutOfDomain(
                "power profile needs at least one atom".into(),
            ));
        }
        for &(power, weight) in &atoms {
            if !power.is_finite() || power < 0.0 {
                return Err(TransformError::OutOfDomain(format!(
                    "atom power must be finite and >= 0, got {power}"
                )));
            }
            if !weight.is_finite() || weight <= 0.0 {
                return Err(TransformError::OutOfDomain(format!(
                    "atom weight must be finite and > 0, got {weight}"
                )));
            }
        }
        let sum: f64 = atoms.iter().map(|&(_, w)| w).sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(TransformError::OutOfDomain(format!(
                "atom weights must sum to 1 within {WEIGHT_SUM_TOL:.0e}, got {sum}"
            )));
        }

        let mut sorted = atoms;
        sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite powers"));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(sorted.len());
        for (power, weight) in sorted {
            match merged.last_mut() {
                Some(last) if last.0 == power => last.1 += weight,
                _ => merged.push((power, weight)),
            }
        }
        let total: f64 = merged.iter().map(|&(_, w)| w).sum();
        for atom in &mut merged {
            atom.1 /= total;
        }
        Ok(Self { atoms: merged })
    }

    /// Single unit-power atom.
    pub fn equal_power() -> Self {
        Self {
            atoms: vec![(1.0, 1.0)],
        }
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    /// First moment of the profile.
    pub fn mean_power(&self) -> f64 {
        self.atoms.iter().map(|&(a, w)| a * w).sum()
    }

    pub fn max_power(&self) -> f64 {
        self.atoms.last().map(|&(a, _)| a).unwrap_or(0.0)
    }

    /// Weight carried by atoms at exactly zero power.
    pub fn zero_mass(&self) -> f64 {
        self.atoms
            .iter()
            .take_while(|&&(a, _)| a == 0.0)
            .map(|&(_, w)| w)
            .sum()
    }

    /// Parses the plain-text form: one `power weight` pair per line,
    /// blank lines and `#` comments allowed.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut atoms = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let power = fields.next();
            let weight = fields.next();
            let extra = fields.next();
            match (power, weight, extra) {
                (Some(p), Some(w), None) => {
                    let power: f64 = p.parse().map_err(|_| {
                        TransformError::OutOfDomain(format!("line {}: bad power {p:?}", lineno + 1))
                    })?;
                    let weight: f64 = w.parse().map_err(|_| {
                        TransformError::OutOfDomain(format!(
                            "line {}: bad weight {w:?}",
                            lineno + 1
                        ))
                    })?;
                    atoms.push((power, weight));
                }
                _ => {
                    return Err(TransformError::OutOfDomain(format!(
                        "line {}: expected `power weight`",
                        lineno + 1
                    )))
                }
            }
        }
        Self::new(atoms)
    }

    /// Emits the plain-text form accepted by [`PowerProfile::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = String::from("# power weight\n");
        for &(a, w) in &self.atoms {
            out.push_str(&format!("{a} {w}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_and_merges_atoms() {
        let p = PowerProfile::new(vec![(10.0, 0.25), (0.1, 0.5), (10.0, 0.25)]).unwrap();
        assert_eq!(p.atoms(), &[(0.1, 0.5), (10.0, 0.5)]);
        assert!((p.mean_power() - 5.05).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_atoms() {
        assert!(PowerProfile::new(vec![]).is_err());
        assert!(PowerProfile::new(vec![(-1.0, 1.0)]).is_err());
        assert!(PowerProfile::new(vec![(1.0, 0.0)]).is_err());
        assert!(PowerProfile::new(vec![(1.0, 0.5), (2.0, 0.6)]).is_err());
    }

    #[test]
    fn accepts_weight_sum_within_tolerance() {
        let p = PowerProfile::new(vec![(1.0, 0.5), (2.0, 0.5 + 5e-13)]).unwrap();
        let total: f64 = p.atoms().iter().map(|&(_, w)| w).sum();
        assert_eq!(total, 1.0);
    }

    #[test]
    fn zero_mass_counts_only_zero_power() {
        let p = PowerProfile::new(vec![(0.0, 0.25), (1.0, 0.75)]).unwrap();
        assert_eq!(p.zero_mass(), 0.25);
        assert_eq!(PowerProfile::equal_power().zero_mass(), 0.0);
    }

    #[test]
    fn text_round_trip() {
        let p = PowerProfile::new(vec![(0.1, 0.5), (10.0, 0.5)]).unwrap();
        let q = PowerProfile::from_text(&p.to_text()).unwrap();
        assert_eq!(p, q);

        let with_comments = "# interferer powers\n0.1 0.5  # weak group\n\n10 0.5\n";
        let r = PowerProfile::from_text(with_comments).unwrap();
        assert_eq!(p, r);
    }

    #[test]
    fn text_rejects_garbage() {
        assert!(PowerProfile::from_text("1.0\n").is_err());
        assert!(PowerProfile::from_text("1.0 two\n").is_err());
        assert!(PowerProfile::from_text("1 1 1\n").is_err());
    }
}
