//! CSV rendering. Numbers use Rust's shortest round-trip form, switching to
//! exponent notation for very large or very small magnitudes.
//!
//! Columns by kind:
//!
//! * fermion: `t`, `re[m]`, `im[m]` for every monomial `m` of the eigenvalue, `residual`, `norm_dev`
//! * grassmann: the fermion columns followed by `phi_re[m]`, `phi_im[m]`
//! * boson: `t`, `re[a]`, `im[a]`, `re[z]`, `im[z]`, `residual`, `norm_dev`
//!
//! Monomials appear in bitmask order and are labelled by their generators
//! joined with `.` (the empty monomial is `1`), e.g. `re[zeta.zeta*]`.

use std::fmt::Write as _;

use coherence_core::dynamics::{BosonTrajectory, FermionTrajectory, GrassmannPath};
use coherence_core::{Complex64, GeneratorSet, Multivector};

pub fn num(x: f64) -> String {
    format!("{x:?}")
}

fn push_row(out: &mut String, cells: impl IntoIterator<Item = String>) {
    let row: Vec<String> = cells.into_iter().collect();
    out.push_str(&row.join(","));
    out.push('\n');
}

fn multivector_header(gens: &GeneratorSet, prefix: &str) -> Vec<String> {
    (0..gens.dimension() as u32)
        .flat_map(|m| {
            let label = gens.monomial_label(m);
            [format!("{prefix}re[{label}]"), format!("{prefix}im[{label}]")]
        })
        .collect()
}

fn multivector_cells(gens: &GeneratorSet, x: Option<&Multivector>) -> Vec<String> {
    (0..gens.dimension() as u32)
        .flat_map(|m| {
            let c = x.map_or(Complex64::new(f64::NAN, f64::NAN), |x| x.coeff(m));
            [num(c.re), num(c.im)]
        })
        .collect()
}

/// Fermion trajectory; `phase` adds the Grassmann phase columns.
pub fn fermion_csv(gens: &GeneratorSet, traj: &FermionTrajectory, phase: Option<&GrassmannPath>) -> String {
    let mut out = String::new();
    let mut header = vec!["t".to_string()];
    header.extend(multivector_header(gens, ""));
    header.extend(["residual".to_string(), "norm_dev".to_string()]);
    if phase.is_some() {
        header.extend(multivector_header(gens, "phi_"));
    }
    push_row(&mut out, header);
    for (k, s) in traj.samples.iter().enumerate() {
        let mut row = vec![num(s.t)];
        row.extend(multivector_cells(gens, s.eigenvalue.as_ref()));
        row.extend([num(s.residual), num(s.norm_deviation)]);
        if let Some(path) = phase {
            row.extend(multivector_cells(gens, path.samples.get(k).map(|p| &p.phase)));
        }
        push_row(&mut out, row);
    }
    out
}

/// Boson trajectory next to the classical eigenvalue `z(t)`.
pub fn boson_csv(traj: &BosonTrajectory, classical: &[Complex64]) -> String {
    let mut out = String::new();
    push_row(&mut out, ["t", "re[a]", "im[a]", "re[z]", "im[z]", "residual", "norm_dev"].map(String::from));
    for (s, z) in traj.samples.iter().zip(classical) {
        push_row(
            &mut out,
            [s.t, s.mean_lower.re, s.mean_lower.im, z.re, z.im, s.residual, s.norm_deviation].map(num),
        );
    }
    out
}

/// One line of the verdict file.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: String,
    /// Human-readable acceptance condition.
    pub condition: String,
    pub passed: bool,
}

impl Check {
    pub fn at_most(name: &'static str, value: f64, bound: f64) -> Self {
        Check { name, value: num(value), condition: format!("<= {}", num(bound)), passed: value <= bound }
    }

    pub fn above(name: &'static str, value: f64, bound: f64) -> Self {
        Check { name, value: num(value), condition: format!("> {}", num(bound)), passed: value > bound }
    }

    pub fn equals(name: &'static str, value: &str, expected: &str) -> Self {
        Check { name, value: value.to_string(), condition: format!("== {expected}"), passed: value == expected }
    }

    pub fn info(name: &'static str, value: &str) -> Self {
        Check { name, value: value.to_string(), condition: String::new(), passed: true }
    }
}

pub fn verdict_csv(checks: &[Check]) -> String {
    let mut out = String::from("check,value,condition,passed\n");
    for c in checks {
        writeln!(out, "{},{},{},{}", c.name, c.value, c.condition, c.passed).expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(num(1.0), "1.0");
        assert_eq!(num(0.1), "0.1");
        assert_eq!(num(-2.5e-12), "-2.5e-12");
        assert_eq!(num(1e20), "1e20");
        assert_eq!(num(f64::INFINITY), "inf");
        assert_eq!(num(f64::NAN), "NaN");
        for x in [0.1 + 0.2, 1.0 / 3.0, 6.02214076e23, -4.9e-324] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn headers() {
        let gens = GeneratorSet::new(&["zeta"]).unwrap();
        assert_eq!(
            multivector_header(&gens, ""),
            ["re[1]", "im[1]", "re[zeta]", "im[zeta]", "re[zeta*]", "im[zeta*]", "re[zeta.zeta*]", "im[zeta.zeta*]"]
        );
    }

    #[test]
    fn verdict_layout() {
        let checks = [Check::at_most("residual", 1e-12, 1e-6), Check::above("witness", 1e-4, 1e-3)];
        assert_eq!(
            verdict_csv(&checks),
            "check,value,condition,passed\nresidual,1e-12,<= 1e-6,true\nwitness,0.0001,> 0.001,false\n"
        );
    }
}
