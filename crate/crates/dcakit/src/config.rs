//! Flat `key = value` run specifications.

use std::path::PathBuf;

use dcakit_core::{RunConfig, SelectionRule, TieBreak};

use crate::error::CliError;

/// Everything needed for one run. Unset fields fall back to the chosen
/// scenario (or to defaults for inline problems).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunSpec {
    pub problem: Option<String>,
    pub inline: Option<String>,
    pub scenario: Option<String>,
    pub x0: Option<Vec<f64>>,
    pub max_iters: Option<usize>,
    pub halt_step_tol: Option<f64>,
    pub divergence_guard: Option<f64>,
    pub selection: Option<SelectionRule>,
    pub tie_break: Option<TieBreak>,
    pub subsolver_tol: Option<f64>,
    pub max_inner_iters: Option<usize>,
    pub out: Option<PathBuf>,
}

impl RunSpec {
    /// Parses a config file. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut spec = RunSpec::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| CliError::Config { line: i + 1, msg: format!("expected key = value, got `{line}`") })?;
            spec.set(key.trim(), value.trim()).map_err(|e| CliError::Config { line: i + 1, msg: e.to_string() })?;
        }
        Ok(spec)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "problem" => self.problem = Some(value.to_string()),
            "inline" => self.inline = Some(value.to_string()),
            "scenario" => self.scenario = Some(value.to_string()),
            "x0" => self.x0 = Some(parse_vector(key, value)?),
            "iters" | "max_iters" => self.max_iters = Some(parse_num(key, value)?),
            "halt_step_tol" => self.halt_step_tol = Some(parse_num(key, value)?),
            "divergence_guard" => self.divergence_guard = Some(parse_num(key, value)?),
            "selection" => self.selection = Some(parse_rule(value)?),
            "tie_break" => self.tie_break = Some(parse_tie(value)?),
            "subsolver_tol" => self.subsolver_tol = Some(parse_num(key, value)?),
            "max_inner_iters" => self.max_inner_iters = Some(parse_num(key, value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            _ => return Err(CliError::value(key, "unknown key")),
        }
        Ok(())
    }

    /// Fields set in `other` win.
    pub fn overlay(mut self, other: RunSpec) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(problem, inline, scenario, x0, max_iters, halt_step_tol, divergence_guard, selection, tie_break, subsolver_tol, max_inner_iters, out);
        self
    }

    /// Applies the overrides to a base configuration.
    pub fn apply(&self, mut cfg: RunConfig) -> RunConfig {
        if let Some(n) = self.max_iters {
            cfg.max_iters = n;
        }
        if let Some(t) = self.halt_step_tol {
            cfg.halt_step_tol = Some(t);
        }
        if let Some(g) = self.divergence_guard {
            cfg.divergence_guard = g;
        }
        if let Some(r) = &self.selection {
            cfg.selection_rule = r.clone();
        }
        if let Some(t) = self.tie_break {
            cfg.subsolver.tie_break = t;
        }
        if let Some(t) = self.subsolver_tol {
            cfg.subsolver.tol = t;
        }
        if let Some(n) = self.max_inner_iters {
            cfg.subsolver.max_inner_iters = n;
        }
        cfg
    }
}

pub fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value.trim().parse().map_err(|e: T::Err| CliError::value(key, format!("`{value}`: {e}")))
}

/// Comma-separated reals.
pub fn parse_vector(key: &str, value: &str) -> Result<Vec<f64>, CliError> {
    let v: Vec<f64> = value.split(',').map(|s| parse_num(key, s)).collect::<Result<_, _>>()?;
    if v.iter().any(|x| !x.is_finite()) {
        return Err(CliError::value(key, "entries must be finite"));
    }
    Ok(v)
}

pub fn format_rule(rule: &SelectionRule) -> String {
    match rule {
        SelectionRule::Default => "default".into(),
        SelectionRule::AdversarialAlternate => "adversarial".into(),
        SelectionRule::NegativeSide => "negative".into(),
        SelectionRule::FixedValue(v) => {
            format!("fixed:{}", v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(","))
        }
    }
}

pub fn parse_rule(s: &str) -> Result<SelectionRule, CliError> {
    Ok(match s.trim() {
        "default" => SelectionRule::Default,
        "adversarial" => SelectionRule::AdversarialAlternate,
        "negative" => SelectionRule::NegativeSide,
        other => match other.strip_prefix("fixed:") {
            Some(v) => SelectionRule::FixedValue(parse_vector("selection", v)?),
            None => return Err(CliError::value("selection", format!("`{other}` (default|adversarial|negative|fixed:v1,..)"))),
        },
    })
}

pub fn format_tie(t: TieBreak) -> &'static str {
    match t {
        TieBreak::LowestPoint => "lowest",
        TieBreak::HighestPoint => "highest",
        TieBreak::StayIfCurrentOptimal => "stay",
        TieBreak::Alternate => "alternate",
    }
}

pub fn parse_tie(s: &str) -> Result<TieBreak, CliError> {
    Ok(match s.trim() {
        "lowest" => TieBreak::LowestPoint,
        "highest" => TieBreak::HighestPoint,
        "stay" => TieBreak::StayIfCurrentOptimal,
        "alternate" => TieBreak::Alternate,
        other => return Err(CliError::value("tie_break", format!("`{other}` (lowest|highest|stay|alternate)"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file_with_comments() {
        let spec = RunSpec::parse("# quartic run\nproblem = quartic\nx0 = 0.5\niters=2000 # long\n\nselection = fixed:0\ntie_break = stay\n").unwrap();
        assert_eq!(spec.problem.as_deref(), Some("quartic"));
        assert_eq!(spec.x0, Some(vec![0.5]));
        assert_eq!(spec.max_iters, Some(2000));
        assert_eq!(spec.selection, Some(SelectionRule::FixedValue(vec![0.0])));
        assert_eq!(spec.tie_break, Some(TieBreak::StayIfCurrentOptimal));
    }

    #[test]
    fn reports_bad_lines() {
        let err = RunSpec::parse("problem = quartic\niters = many\n").unwrap_err();
        assert!(matches!(err, CliError::Config { line: 2, .. }), "{err}");
        assert!(matches!(RunSpec::parse("nonsense"), Err(CliError::Config { line: 1, .. })));
        assert!(RunSpec::parse("colour = blue").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = RunSpec::parse("problem = quartic\niters = 10\nx0 = 1").unwrap();
        let flags = RunSpec { max_iters: Some(20), ..Default::default() };
        let spec = file.overlay(flags);
        assert_eq!(spec.max_iters, Some(20));
        assert_eq!(spec.x0, Some(vec![1.0]));
    }

    #[test]
    fn rules_round_trip() {
        for r in [SelectionRule::Default, SelectionRule::AdversarialAlternate, SelectionRule::NegativeSide, SelectionRule::FixedValue(vec![-0.5, 0.1])] {
            assert_eq!(parse_rule(&format_rule(&r)).unwrap(), r);
        }
        for t in [TieBreak::LowestPoint, TieBreak::HighestPoint, TieBreak::StayIfCurrentOptimal, TieBreak::Alternate] {
            assert_eq!(parse_tie(format_tie(t)).unwrap(), t);
        }
    }
}
