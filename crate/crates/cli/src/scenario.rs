//! INI-style scenario files.
//!
//! ```ini
//! [system]
//! kind = grassmann          # boson | fermion | grassmann
//! generators = zeta, eta    # base names; each also declares `name*`
//! expect = preserving       # optional: preserving | non_preserving
//!
//! [hamiltonian]
//! omega = 1
//! eta_re = 0.4*cos(-1*t)
//! eta_im = 0.4*sin(-1*t)
//! eta_generator = eta
//! delta = 0.1
//!
//! [initial]
//! zeta0 = 0.5*zeta + 0.2i*zeta*
//!
//! [integration]
//! t_end = 2
//! dt = 1e-3
//! stride = 10
//!
//! [output]
//! path = grassmann.csv
//! ```
//!
//! Boson scenarios use `f_re`, `f_im`, `g`, `z0_re`, `z0_im` and `nmax`;
//! fermion scenarios use `generators`, `f_re`, `f_im`, `g` and `zeta0`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use coherence_core::boson::DEFAULT_NMAX;
use coherence_core::coherence::Verdict;
use coherence_core::dynamics::{
    CoefficientFn, ComplexCoefficient, HamiltonianSpec, SystemKind, TimeGrid, DEFAULT_DT, DEFAULT_STRIDE,
};
use coherence_core::grassmann::MAX_GENERATORS;
use coherence_core::{Complex64, GeneratorSet, Multivector};

use crate::expr::{parse_coefficient_expr, ParseError};
use crate::CliError;

const SECTIONS: &[(&str, &[&str])] = &[
    ("system", &["kind", "generators", "nmax", "expect"]),
    ("hamiltonian", &["omega", "f_re", "f_im", "eta_re", "eta_im", "eta_generator", "g", "delta"]),
    ("initial", &["zeta0", "z0_re", "z0_im"]),
    ("integration", &["t_end", "dt", "stride"]),
    ("output", &["path"]),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationConfig {
    pub t_end: f64,
    pub dt: f64,
    pub stride: usize,
}

impl IntegrationConfig {
    pub fn grid(&self) -> Result<TimeGrid, CliError> {
        TimeGrid::new(self.t_end, self.dt, self.stride)
            .map_err(|_| CliError::Validation("integration needs t_end > 0, dt > 0 and stride >= 1".into()))
    }
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub kind: SystemKind,
    /// Base generator names (fermion and grassmann kinds).
    pub generators: Vec<String>,
    /// Fock-space truncation (boson kind).
    pub nmax: Option<usize>,
    pub expect: Option<Verdict>,
    pub omega: CoefficientFn,
    /// `f` (boson, fermion) or the amplitude `h` of `η = h·η_g` (grassmann).
    pub forcing: ComplexCoefficient,
    /// `g` (boson, fermion) or `δ` (grassmann).
    pub scalar: CoefficientFn,
    pub eta_generator: Option<String>,
    /// Initial fermion eigenvalue as `(generator label, coefficient)` pairs.
    pub zeta0: Vec<(String, Complex64)>,
    pub z0: Complex64,
    pub integration: IntegrationConfig,
    pub output: Option<PathBuf>,
}

impl Scenario {
    pub fn generator_set(&self) -> Result<Arc<GeneratorSet>, CliError> {
        GeneratorSet::new(&self.generators).map_err(|e| CliError::Validation(e.to_string()))
    }

    pub fn eta_pair(&self) -> Option<usize> {
        let name = self.eta_generator.as_deref()?;
        self.generators.iter().position(|g| g == name)
    }

    pub fn spec(&self) -> HamiltonianSpec {
        let omega = self.omega.clone();
        let forcing = self.forcing.clone();
        let scalar = self.scalar.clone();
        match self.kind {
            SystemKind::Boson => HamiltonianSpec::boson(omega, forcing, scalar),
            SystemKind::Fermion => HamiltonianSpec::fermion(omega, forcing, scalar),
            SystemKind::Grassmann => {
                HamiltonianSpec::grassmann(omega, forcing, self.eta_pair().expect("validated"), scalar)
            }
        }
    }

    pub fn zeta0(&self, gens: &Arc<GeneratorSet>) -> Multivector {
        self.zeta0.iter().fold(Multivector::zero(gens), |acc, (name, c)| {
            let index = gens.index_of(name).expect("validated");
            acc + Multivector::generator(gens, index).scale(*c)
        })
    }

    pub fn nmax_or_default(&self) -> usize {
        self.nmax.unwrap_or(DEFAULT_NMAX)
    }

    /// Canonical INI text; parsing it yields an equal scenario.
    pub fn to_ini(&self) -> String {
        let mut out = String::new();
        let kv = |out: &mut String, k: &str, v: &dyn std::fmt::Display| {
            writeln!(out, "{k} = {v}").expect("writing to a String");
        };
        out.push_str("[system]\n");
        kv(&mut out, "kind", &kind_name(self.kind));
        if !self.generators.is_empty() && self.kind != SystemKind::Boson {
            kv(&mut out, "generators", &self.generators.join(", "));
        }
        if let Some(n) = self.nmax {
            kv(&mut out, "nmax", &n);
        }
        if let Some(v) = self.expect {
            kv(&mut out, "expect", &verdict_name(v));
        }

        out.push_str("\n[hamiltonian]\n");
        kv(&mut out, "omega", &self.omega);
        let (re_key, im_key, scalar_key) = match self.kind {
            SystemKind::Grassmann => ("eta_re", "eta_im", "delta"),
            _ => ("f_re", "f_im", "g"),
        };
        for (key, f) in [(re_key, &self.forcing.re), (im_key, &self.forcing.im), (scalar_key, &self.scalar)] {
            if !f.terms().is_empty() {
                kv(&mut out, key, f);
            }
        }
        if let Some(eta) = &self.eta_generator {
            kv(&mut out, "eta_generator", eta);
        }

        let mut initial = String::new();
        if self.kind == SystemKind::Boson {
            kv(&mut initial, "z0_re", &format_args!("{:?}", self.z0.re));
            kv(&mut initial, "z0_im", &format_args!("{:?}", self.z0.im));
        } else if !self.zeta0.is_empty() {
            let terms: Vec<String> = self
                .zeta0
                .iter()
                .flat_map(|(name, c)| {
                    let re = (c.re != 0.0).then(|| format!("{:?}*{name}", c.re));
                    let im = (c.im != 0.0).then(|| format!("{:?}i*{name}", c.im));
                    re.into_iter().chain(im)
                })
                .collect();
            kv(&mut initial, "zeta0", &terms.join(" + "));
        }
        if !initial.is_empty() {
            out.push_str("\n[initial]\n");
            out.push_str(&initial);
        }

        out.push_str("\n[integration]\n");
        kv(&mut out, "t_end", &format_args!("{:?}", self.integration.t_end));
        kv(&mut out, "dt", &format_args!("{:?}", self.integration.dt));
        kv(&mut out, "stride", &self.integration.stride);

        if let Some(path) = &self.output {
            out.push_str("\n[output]\n");
            kv(&mut out, "path", &path.display());
        }
        out
    }
}

pub fn kind_name(kind: SystemKind) -> &'static str {
    match kind {
        SystemKind::Boson => "boson",
        SystemKind::Fermion => "fermion",
        SystemKind::Grassmann => "grassmann",
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Preserving => "preserving",
        Verdict::NonPreserving => "non_preserving",
    }
}

/// A raw `key = value` entry with its source position.
struct Entry {
    value: String,
    line: usize,
    /// Byte column of the value within its line.
    column: usize,
}

impl Entry {
    fn parse_error(&self, e: ParseError) -> CliError {
        CliError::Parse { line: self.line, column: self.column + e.offset, message: format!("expected {}", e.expected) }
    }

    fn coefficient(&self) -> Result<CoefficientFn, CliError> {
        parse_coefficient_expr(&self.value).map_err(|e| self.parse_error(e))
    }

    fn real(&self, key: &str) -> Result<f64, CliError> {
        self.value.parse().map_err(|_| CliError::Parse {
            line: self.line,
            column: self.column,
            message: format!("`{key}` must be a number"),
        })
    }
}

fn tokenize(text: &str) -> Result<BTreeMap<String, Entry>, CliError> {
    let mut entries = BTreeMap::new();
    let mut section: Option<&str> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split_once(['#', ';']).map_or(raw, |(before, _)| before);
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if let Some(inner) = trimmed.strip_prefix('[') {
            let name = inner.strip_suffix(']').ok_or(CliError::Parse {
                line,
                column: indent + trimmed.len(),
                message: "expected `]`".into(),
            })?;
            let name = name.trim();
            section = Some(
                SECTIONS
                    .iter()
                    .map(|(s, _)| *s)
                    .find(|s| *s == name)
                    .ok_or_else(|| CliError::Validation(format!("unknown section [{name}] on line {line}")))?,
            );
            continue;
        }
        let (key, value) = content.split_once('=').ok_or(CliError::Parse {
            line,
            column: indent,
            message: "expected `key = value`".into(),
        })?;
        let key = key.trim();
        let sec = section
            .ok_or_else(|| CliError::Validation(format!("key `{key}` on line {line} appears before any section")))?;
        let allowed = SECTIONS.iter().find(|(s, _)| *s == sec).map(|(_, keys)| *keys).unwrap_or(&[]);
        if !allowed.contains(&key) {
            return Err(CliError::Validation(format!("unknown key `{key}` in [{sec}] on line {line}")));
        }
        let value_start = key_value_offset(content);
        let mut value_text = value.trim();
        let mut column = value_start + (value.len() - value.trim_start().len());
        if value_text.len() >= 2 && value_text.starts_with('"') && value_text.ends_with('"') {
            value_text = &value_text[1..value_text.len() - 1];
            column += 1;
        }
        if entries.contains_key(key) {
            return Err(CliError::Validation(format!("duplicate key `{key}` on line {line}")));
        }
        entries.insert(key.to_string(), Entry { value: value_text.to_string(), line, column });
    }
    Ok(entries)
}

fn key_value_offset(content: &str) -> usize {
    content.find('=').map_or(0, |i| i + 1)
}

/// `[NUM ['i'] '*'] NAME ['*']` terms joined by `+` or `-`.
pub fn parse_generator_combination(text: &str) -> Result<Vec<(String, Complex64)>, ParseError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip = |pos: &mut usize| {
        while bytes.get(*pos).is_some_and(u8::is_ascii_whitespace) {
            *pos += 1;
        }
    };
    let err = |offset: usize, expected: &str| ParseError { offset, expected: expected.to_string() };
    let mut out: Vec<(String, Complex64)> = Vec::new();
    let mut sign = 1.0;
    loop {
        skip(&mut pos);
        let mut coef = Complex64::new(sign, 0.0);
        let num_start = pos;
        let mut num_end = pos;
        if matches!(bytes.get(num_end), Some(b'+' | b'-')) {
            num_end += 1;
        }
        while bytes.get(num_end).is_some_and(|c| c.is_ascii_digit() || matches!(c, b'.' | b'e' | b'E'))
            || (num_end > num_start
                && matches!(bytes.get(num_end), Some(b'+' | b'-'))
                && matches!(bytes.get(num_end - 1), Some(b'e' | b'E')))
        {
            num_end += 1;
        }
        let has_digits = text[num_start..num_end].bytes().any(|c| c.is_ascii_digit());
        if has_digits {
            let value: f64 = text[num_start..num_end].parse().map_err(|_| err(num_start, "a number"))?;
            pos = num_end;
            let imaginary = bytes.get(pos) == Some(&b'i') && bytes.get(pos + 1).is_some_and(|c| *c == b'*' || c.is_ascii_whitespace());
            if imaginary {
                pos += 1;
            }
            skip(&mut pos);
            if bytes.get(pos) != Some(&b'*') {
                return Err(err(pos, "`*`"));
            }
            pos += 1;
            skip(&mut pos);
            coef = if imaginary { Complex64::new(0.0, sign * value) } else { Complex64::new(sign * value, 0.0) };
        }
        let name_start = pos;
        if !bytes.get(pos).is_some_and(|c| c.is_ascii_alphabetic() || *c == b'_') {
            return Err(err(pos, "a generator name"));
        }
        while bytes.get(pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
            pos += 1;
        }
        if bytes.get(pos) == Some(&b'*') {
            pos += 1;
        }
        let name = &text[name_start..pos];
        match out.iter_mut().find(|(n, _)| n == name) {
            Some((_, c)) => *c += coef,
            None => out.push((name.to_string(), coef)),
        }
        skip(&mut pos);
        match bytes.get(pos) {
            None => break,
            Some(b'+') => sign = 1.0,
            Some(b'-') => sign = -1.0,
            Some(_) => return Err(err(pos, "`+`, `-` or end of input")),
        }
        pos += 1;
    }
    out.retain(|(_, c)| *c != Complex64::new(0.0, 0.0));
    Ok(out)
}

fn parse_kind(entry: &Entry) -> Result<SystemKind, CliError> {
    match entry.value.as_str() {
        "boson" => Ok(SystemKind::Boson),
        "fermion" => Ok(SystemKind::Fermion),
        "grassmann" => Ok(SystemKind::Grassmann),
        other => Err(CliError::Validation(format!(
            "line {}: kind must be boson, fermion or grassmann, got `{other}`",
            entry.line
        ))),
    }
}

fn parse_verdict(entry: &Entry) -> Result<Verdict, CliError> {
    match entry.value.as_str() {
        "preserving" => Ok(Verdict::Preserving),
        "non_preserving" => Ok(Verdict::NonPreserving),
        other => Err(CliError::Validation(format!(
            "line {}: expect must be preserving or non_preserving, got `{other}`",
            entry.line
        ))),
    }
}

fn forbid(entries: &BTreeMap<String, Entry>, keys: &[&str], kind: SystemKind) -> Result<(), CliError> {
    match keys.iter().find(|k| entries.contains_key(**k)) {
        Some(k) => Err(CliError::Validation(format!("key `{k}` does not apply to kind {}", kind_name(kind)))),
        None => Ok(()),
    }
}

fn require<'a>(entries: &'a BTreeMap<String, Entry>, key: &str) -> Result<&'a Entry, CliError> {
    entries.get(key).ok_or_else(|| CliError::Validation(format!("missing required key `{key}`")))
}

fn optional_coefficient(entries: &BTreeMap<String, Entry>, key: &str) -> Result<CoefficientFn, CliError> {
    entries.get(key).map_or(Ok(CoefficientFn::zero()), Entry::coefficient)
}

fn parse_generators(entry: Option<&Entry>) -> Result<Vec<String>, CliError> {
    let Some(entry) = entry else {
        return Ok(vec!["zeta".to_string()]);
    };
    let names: Vec<String> = entry.value.split(',').map(|s| s.trim().to_string()).collect();
    for name in &names {
        let valid = name.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(CliError::Validation(format!("line {}: invalid generator name `{name}`", entry.line)));
        }
    }
    if 2 * names.len() > MAX_GENERATORS {
        return Err(CliError::Validation(format!(
            "line {}: {} generator pairs declared, at most {} supported",
            entry.line,
            names.len(),
            MAX_GENERATORS / 2
        )));
    }
    GeneratorSet::new(&names).map_err(|e| CliError::Validation(format!("line {}: {e}", entry.line)))?;
    Ok(names)
}

/// Parses and validates scenario text.
pub fn parse_scenario(text: &str) -> Result<Scenario, CliError> {
    let entries = tokenize(text)?;
    let kind = parse_kind(require(&entries, "kind")?)?;
    match kind {
        SystemKind::Boson => forbid(&entries, &["generators", "eta_re", "eta_im", "eta_generator", "delta", "zeta0"], kind)?,
        SystemKind::Fermion => forbid(&entries, &["nmax", "eta_re", "eta_im", "eta_generator", "delta", "z0_re", "z0_im"], kind)?,
        SystemKind::Grassmann => forbid(&entries, &["nmax", "f_re", "f_im", "g", "z0_re", "z0_im"], kind)?,
    }

    let omega = require(&entries, "omega")?.coefficient()?;
    let (re_key, im_key, scalar_key) = match kind {
        SystemKind::Grassmann => ("eta_re", "eta_im", "delta"),
        _ => ("f_re", "f_im", "g"),
    };
    let forcing = ComplexCoefficient::new(optional_coefficient(&entries, re_key)?, optional_coefficient(&entries, im_key)?);
    let scalar = optional_coefficient(&entries, scalar_key)?;

    let generators = match kind {
        SystemKind::Boson => Vec::new(),
        _ => parse_generators(entries.get("generators"))?,
    };

    let eta_generator = match kind {
        SystemKind::Grassmann => {
            let entry = entries.get("eta_generator").ok_or_else(|| {
                CliError::Validation("grassmann kind needs `eta_generator` naming a declared generator pair".into())
            })?;
            if !generators.contains(&entry.value) {
                return Err(CliError::Validation(format!(
                    "line {}: eta_generator `{}` is not a declared generator",
                    entry.line, entry.value
                )));
            }
            Some(entry.value.clone())
        }
        _ => None,
    };

    let zeta0 = match entries.get("zeta0") {
        Some(entry) => {
            let terms = parse_generator_combination(&entry.value).map_err(|e| entry.parse_error(e))?;
            let gens = GeneratorSet::new(&generators).expect("generators validated");
            for (name, _) in &terms {
                let Some(index) = gens.index_of(name) else {
                    return Err(CliError::Validation(format!(
                        "line {}: zeta0 uses undeclared generator `{name}`",
                        entry.line
                    )));
                };
                if eta_generator.as_deref() == Some(gens.name(index & !1)) {
                    return Err(CliError::Validation(format!(
                        "line {}: zeta0 uses the forcing generator `{name}`",
                        entry.line
                    )));
                }
            }
            terms
        }
        None => Vec::new(),
    };

    let nmax = match entries.get("nmax") {
        Some(e) => Some(e.value.parse::<usize>().ok().filter(|n| *n > 0).ok_or_else(|| {
            CliError::Validation(format!("line {}: nmax must be a positive integer", e.line))
        })?),
        None => None,
    };
    let z0 = Complex64::new(
        entries.get("z0_re").map_or(Ok(0.0), |e| e.real("z0_re"))?,
        entries.get("z0_im").map_or(Ok(0.0), |e| e.real("z0_im"))?,
    );

    let t_end = require(&entries, "t_end")?.real("t_end")?;
    let dt = entries.get("dt").map_or(Ok(DEFAULT_DT), |e| e.real("dt"))?;
    let stride = match entries.get("stride") {
        Some(e) => e.value.parse::<usize>().map_err(|_| CliError::Parse {
            line: e.line,
            column: e.column,
            message: "`stride` must be a positive integer".into(),
        })?,
        None => DEFAULT_STRIDE,
    };
    let integration = IntegrationConfig { t_end, dt, stride };
    integration.grid()?;

    Ok(Scenario {
        kind,
        generators,
        nmax,
        expect: entries.get("expect").map(parse_verdict).transpose()?,
        omega,
        forcing,
        scalar,
        eta_generator,
        zeta0,
        z0,
        integration,
        output: entries.get("path").map(|e| PathBuf::from(&e.value)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "[system]\nkind = fermion\n[hamiltonian]\nomega = 1\n[integration]\nt_end = 1\n";

    #[test]
    fn defaults_applied() {
        let s = parse_scenario(MINIMAL).unwrap();
        assert_eq!(s.kind, SystemKind::Fermion);
        assert_eq!(s.integration.dt, 1e-3);
        assert_eq!(s.integration.stride, 10);
        assert_eq!(s.generators, vec!["zeta".to_string()]);
        assert!(s.zeta0.is_empty() && s.expect.is_none());
    }

    #[test]
    fn duplicate_and_unknown_keys() {
        let dup = format!("{MINIMAL}dt = 1e-3\ndt = 2e-3\n");
        match parse_scenario(&dup) {
            Err(CliError::Validation(msg)) => assert!(msg.contains("`dt`"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let unknown = format!("{MINIMAL}tolerance = 1\n");
        assert!(matches!(parse_scenario(&unknown), Err(CliError::Validation(m)) if m.contains("tolerance")));
        let misplaced = "[system]\nkind = fermion\nomega = 1\n";
        assert!(matches!(parse_scenario(misplaced), Err(CliError::Validation(_))));
    }

    #[test]
    fn expression_errors_point_into_the_line() {
        let bad = "[system]\nkind = fermion\n[hamiltonian]\nomega = cos(\n[integration]\nt_end = 1\n";
        match parse_scenario(bad) {
            Err(CliError::Parse { line, column, .. }) => assert_eq!((line, column), (4, 12)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn grassmann_needs_declared_eta() {
        let text = "[system]\nkind = grassmann\ngenerators = zeta\n[hamiltonian]\nomega = 1\n[integration]\nt_end = 1\n";
        assert!(matches!(parse_scenario(text), Err(CliError::Validation(m)) if m.contains("eta_generator")));
        let text = text.replace("omega = 1", "omega = 1\neta_generator = eta");
        assert!(matches!(parse_scenario(&text), Err(CliError::Validation(m)) if m.contains("not a declared")));
    }

    #[test]
    fn kind_specific_keys() {
        let text = MINIMAL.replace("omega = 1", "omega = 1\ndelta = 0.1");
        assert!(matches!(parse_scenario(&text), Err(CliError::Validation(m)) if m.contains("delta")));
    }

    #[test]
    fn zeta0_rules() {
        let base = "[system]\nkind = grassmann\ngenerators = zeta, eta\n[hamiltonian]\nomega = 1\neta_generator = eta\n[initial]\nzeta0 = Z\n[integration]\nt_end = 1\n";
        let ok = parse_scenario(&base.replace('Z', "0.5*zeta - 0.25i*zeta* + 0.1*zeta")).unwrap();
        assert_eq!(
            ok.zeta0,
            vec![("zeta".to_string(), Complex64::new(0.6, 0.0)), ("zeta*".to_string(), Complex64::new(0.0, -0.25))]
        );
        assert!(matches!(parse_scenario(&base.replace('Z', "1*eta*")), Err(CliError::Validation(m)) if m.contains("forcing")));
        assert!(matches!(parse_scenario(&base.replace('Z', "1*xi")), Err(CliError::Validation(m)) if m.contains("undeclared")));
        assert!(matches!(parse_scenario(&base.replace('Z', "0.5 zeta")), Err(CliError::Parse { .. })));
    }

    #[test]
    fn combination_parser() {
        let terms = parse_generator_combination("zeta + -2.5e-1*eta* - 1i*zeta").unwrap();
        assert_eq!(
            terms,
            vec![("zeta".to_string(), Complex64::new(1.0, -1.0)), ("eta*".to_string(), Complex64::new(-0.25, 0.0))]
        );
        assert_eq!(parse_generator_combination("1*zeta - 1*zeta").unwrap(), vec![]);
        assert_eq!(parse_generator_combination("1*").unwrap_err().offset, 2);
    }

    #[test]
    fn serialize_round_trip() {
        let text = "[system]\nkind = grassmann\ngenerators = zeta, eta\nexpect = \"preserving\"\n[hamiltonian]\nomega = 1 + 0.5*sin(1*t)\neta_re = 0.4*cos(-1*t)\neta_im = 0.4*sin(-1*t)\neta_generator = eta\ndelta = 0.1\n[initial]\nzeta0 = 0.5*zeta + 0.2i*zeta*\n[integration]\nt_end = 2\ndt = 0.001\nstride = 100\n[output]\npath = out/g.csv\n";
        let s = parse_scenario(text).unwrap();
        let again = parse_scenario(&s.to_ini()).unwrap();
        assert_eq!(again, s);
        assert_eq!(again.to_ini(), s.to_ini());

        let boson = "[system]\nkind = boson\nnmax = 40\n[hamiltonian]\nomega = 1\nf_re = 0.2\n[initial]\nz0_re = 0.5\n[integration]\nt_end = 3.141592653589793\n";
        let s = parse_scenario(boson).unwrap();
        assert_eq!(parse_scenario(&s.to_ini()).unwrap(), s);
    }
}
