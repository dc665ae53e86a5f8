//! Project files: one TOML document naming the ring, ideals, filtration,
//! candidates and scan parameters.
//!
//! ```toml
//! variables = ["X", "Y"]
//!
//! [ideals]
//! I = "X^2 + X*Y + Y^2"
//! J = [[2, 0], [0, 2]]
//!
//! [filtration]
//! family = "powers"
//! ideals = ["I", "J"]
//!
//! [candidates]
//! A = [["X^2", "Y^2"], ["X^2", "Y^2"]]
//!
//! [scan]
//! box = [8, 8]
//! margin = 3
//! ```
//!
//! Ideals and candidate entries are written either as expressions or as
//! exponent arrays. A `user_table` filtration adds `table_box` and an
//! `[filtration.entries]` table keyed by `"n1,n2"`.

use std::collections::BTreeMap;
use std::path::Path;

use multirees::{
    CompleteReductionCandidate, Family, Filtration, FiltrationSpec, GridBox, Monomial,
    MonomialIdeal, MultiIndex, UserTable,
};
use thiserror::Error;
use toml::Value;

#[derive(Debug, Error)]
pub enum ProjectError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Syntax(#[from] toml::de::Error),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl ToString) -> ProjectError {
    ProjectError::Field {
        field: field.into(),
        message: message.to_string(),
    }
}

/// Scan parameters with their defaults filled in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanSettings {
    pub hi: MultiIndex,
    pub margin: i64,
    pub offset: Option<MultiIndex>,
    pub degree_bound: u64,
    pub cap: usize,
}

#[derive(Clone, Debug)]
pub struct Project {
    pub variables: Vec<String>,
    pub ideals: BTreeMap<String, MonomialIdeal>,
    pub filtration_ideals: Vec<String>,
    pub spec: FiltrationSpec,
    pub candidates: BTreeMap<String, CompleteReductionCandidate>,
    pub scan: ScanSettings,
}

impl Project {
    pub fn load(path: &Path) -> Result<Project, ProjectError> {
        let text = std::fs::read_to_string(path).map_err(|source| ProjectError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Project, ProjectError> {
        let root: toml::Table = toml::from_str(text)?;
        for key in root.keys() {
            if !["variables", "ideals", "filtration", "candidates", "scan"].contains(&key.as_str())
            {
                return Err(field_err(key.clone(), "unknown section"));
            }
        }

        let variables = parse_variables(root.get("variables"))?;
        let d = variables.len();

        let mut ideals = BTreeMap::new();
        let raw_ideals = table(&root, "ideals")?.ok_or_else(|| field_err("ideals", "missing"))?;
        for (name, v) in raw_ideals {
            let field = format!("ideals.{name}");
            ideals.insert(name.clone(), ideal_from_value(&field, v, &variables)?);
        }

        let filtration =
            table(&root, "filtration")?.ok_or_else(|| field_err("filtration", "missing"))?;
        let family = filtration
            .get("family")
            .and_then(Value::as_str)
            .ok_or_else(|| field_err("filtration.family", "expected a string"))?;
        let filtration_ideals: Vec<String> = filtration
            .get("ideals")
            .and_then(Value::as_array)
            .ok_or_else(|| field_err("filtration.ideals", "expected a list of ideal names"))?
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| field_err("filtration.ideals", "expected ideal names"))
            })
            .collect::<Result<_, _>>()?;
        let chosen: Vec<MonomialIdeal> = filtration_ideals
            .iter()
            .map(|n| {
                ideals
                    .get(n)
                    .cloned()
                    .ok_or_else(|| field_err("filtration.ideals", format!("unknown ideal {n:?}")))
            })
            .collect::<Result<_, _>>()?;
        let s = chosen.len();

        let family = match family {
            "powers" => Family::Powers,
            "closure_of_powers" => Family::ClosureOfPowers,
            "user_table" => Family::UserTable(parse_table(filtration, s, &variables)?),
            other => return Err(field_err(
                "filtration.family",
                format!(
                    "unknown family {other:?}; expected powers, closure_of_powers or user_table"
                ),
            )),
        };
        let spec = FiltrationSpec::new(chosen, family).map_err(|e| field_err("filtration", e))?;

        let scan = parse_scan(table(&root, "scan")?, s)?;

        let mut candidates = BTreeMap::new();
        if let Some(raw) = table(&root, "candidates")? {
            let f = Filtration::new(spec.clone());
            for (name, v) in raw {
                let field = format!("candidates.{name}");
                let rows = v
                    .as_array()
                    .ok_or_else(|| field_err(&field, "expected a matrix"))?;
                let matrix: Vec<Vec<Monomial>> = rows
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        let row = row
                            .as_array()
                            .ok_or_else(|| field_err(format!("{field}[{i}]"), "expected a row"))?;
                        row.iter()
                            .enumerate()
                            .map(|(j, e)| {
                                monomial_from_value(&format!("{field}[{i}][{j}]"), e, &variables)
                            })
                            .collect()
                    })
                    .collect::<Result<_, _>>()?;
                let c = CompleteReductionCandidate::new(&f, matrix)
                    .map_err(|e| field_err(&field, e))?;
                candidates.insert(name.clone(), c);
            }
        }

        debug_assert_eq!(spec.ambient_dim(), d);
        Ok(Project {
            variables,
            ideals,
            filtration_ideals,
            spec,
            candidates,
            scan,
        })
    }

    pub fn filtration(&self, cache_bound: Option<usize>) -> Filtration {
        match cache_bound {
            Some(b) => Filtration::with_cache_bound(self.spec.clone(), b),
            None => Filtration::new(self.spec.clone()),
        }
    }
}

fn table<'a>(root: &'a toml::Table, key: &str) -> Result<Option<&'a toml::Table>, ProjectError> {
    match root.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_table()
            .map(Some)
            .ok_or_else(|| field_err(key, "expected a table")),
    }
}

fn parse_variables(v: Option<&Value>) -> Result<Vec<String>, ProjectError> {
    let list = v
        .and_then(Value::as_array)
        .ok_or_else(|| field_err("variables", "expected a list of variable names"))?;
    let names: Vec<String> = list
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_owned)
                .ok_or_else(|| field_err("variables", "names must be strings"))
        })
        .collect::<Result<_, _>>()?;
    if names.is_empty() {
        return Err(field_err("variables", "at least one variable is required"));
    }
    for (k, n) in names.iter().enumerate() {
        let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(field_err("variables", format!("invalid name {n:?}")));
        }
        if names[..k].contains(n) {
            return Err(field_err("variables", format!("duplicate name {n:?}")));
        }
    }
    Ok(names)
}

fn exponents_from_value(field: &str, v: &Value, d: usize) -> Result<Vec<u32>, ProjectError> {
    let arr = v
        .as_array()
        .ok_or_else(|| field_err(field, "expected an exponent array"))?;
    if arr.len() != d {
        return Err(field_err(
            field,
            format!("expected {d} exponents, found {}", arr.len()),
        ));
    }
    arr.iter()
        .map(|x| {
            x.as_integer()
                .and_then(|i| u32::try_from(i).ok())
                .ok_or_else(|| field_err(field, "exponents must be non-negative integers"))
        })
        .collect()
}

fn ideal_from_value(
    field: &str,
    v: &Value,
    names: &[String],
) -> Result<MonomialIdeal, ProjectError> {
    let d = names.len();
    match v {
        Value::String(text) => {
            MonomialIdeal::parse_with(text, names).map_err(|e| field_err(field, e))
        }
        Value::Array(gens) => {
            let exps = gens
                .iter()
                .enumerate()
                .map(|(k, g)| exponents_from_value(&format!("{field}[{k}]"), g, d))
                .collect::<Result<Vec<_>, _>>()?;
            MonomialIdeal::from_exponents(d, &exps).map_err(|e| field_err(field, e))
        }
        _ => Err(field_err(
            field,
            "expected an expression or a list of exponent arrays",
        )),
    }
}

fn monomial_from_value(field: &str, v: &Value, names: &[String]) -> Result<Monomial, ProjectError> {
    match v {
        Value::String(text) => {
            let ideal = MonomialIdeal::parse_with(text, names).map_err(|e| field_err(field, e))?;
            match ideal.generators() {
                [g] => Ok(g.clone()),
                _ => Err(field_err(field, "expected a single monomial")),
            }
        }
        Value::Array(_) => Ok(Monomial::new(exponents_from_value(field, v, names.len())?)),
        _ => Err(field_err(
            field,
            "expected a monomial expression or exponent array",
        )),
    }
}

fn index_from_value(field: &str, v: &Value, s: usize) -> Result<MultiIndex, ProjectError> {
    let arr = v
        .as_array()
        .ok_or_else(|| field_err(field, "expected an integer list"))?;
    if arr.len() != s {
        return Err(field_err(
            field,
            format!("expected {s} entries, found {}", arr.len()),
        ));
    }
    let parts: Vec<i64> = arr
        .iter()
        .map(|x| {
            x.as_integer()
                .ok_or_else(|| field_err(field, "entries must be integers"))
        })
        .collect::<Result<_, _>>()?;
    Ok(MultiIndex::new(parts))
}

fn parse_table(
    filtration: &toml::Table,
    s: usize,
    names: &[String],
) -> Result<UserTable, ProjectError> {
    let hi = index_from_value(
        "filtration.table_box",
        filtration
            .get("table_box")
            .ok_or_else(|| field_err("filtration.table_box", "required for user_table"))?,
        s,
    )?;
    if hi.has_negative() {
        return Err(field_err(
            "filtration.table_box",
            "entries must be non-negative",
        ));
    }
    let raw = filtration
        .get("entries")
        .and_then(Value::as_table)
        .ok_or_else(|| field_err("filtration.entries", "required for user_table"))?;
    let mut by_index = BTreeMap::new();
    for (key, v) in raw {
        let field = format!("filtration.entries.{key}");
        let n = MultiIndex::parse_list(key).map_err(|e| field_err(&field, e))?;
        by_index.insert(n, ideal_from_value(&field, v, names)?);
    }
    let grid = GridBox::up_to(hi.clone());
    let entries = grid
        .points()
        .map(|n| {
            by_index.remove(&n).ok_or_else(|| {
                field_err(
                    "filtration.entries",
                    format!("missing entry \"{}\"", n.to_key()),
                )
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(extra) = by_index.keys().next() {
        return Err(field_err(
            "filtration.entries",
            format!("entry \"{}\" lies outside table_box", extra.to_key()),
        ));
    }
    Ok(UserTable { hi, entries })
}

fn parse_scan(raw: Option<&toml::Table>, s: usize) -> Result<ScanSettings, ProjectError> {
    let mut scan = ScanSettings {
        hi: MultiIndex::splat(s, 6),
        margin: 3,
        offset: None,
        degree_bound: 12,
        cap: 256,
    };
    let Some(raw) = raw else {
        return Ok(scan);
    };
    for (key, v) in raw {
        let field = format!("scan.{key}");
        match key.as_str() {
            "box" => scan.hi = index_from_value(&field, v, s)?,
            "offset" => scan.offset = Some(index_from_value(&field, v, s)?),
            "margin" => {
                scan.margin = v
                    .as_integer()
                    .filter(|&m| m >= 0)
                    .ok_or_else(|| field_err(&field, "expected a non-negative integer"))?
            }
            "degree_bound" => {
                scan.degree_bound = v
                    .as_integer()
                    .and_then(|m| u64::try_from(m).ok())
                    .ok_or_else(|| field_err(&field, "expected a non-negative integer"))?
            }
            "cap" => {
                scan.cap = v
                    .as_integer()
                    .and_then(|m| usize::try_from(m).ok())
                    .ok_or_else(|| field_err(&field, "expected a non-negative integer"))?
            }
            _ => return Err(field_err(field, "unknown key")),
        }
    }
    if scan.hi.has_negative() {
        return Err(field_err("scan.box", "entries must be non-negative"));
    }
    Ok(scan)
}
