//! The JSON document format: named interval modules plus an optional grid
//! block. Coordinates are strings so that fractions and infinities survive
//! exactly; see `docs/format.md` for the layout.

use std::fmt::Write as _;

use serde::Deserialize;
use thiserror::Error;

use crate::dimdist::{DimError, GridFunction};
use crate::extreal::{ExtendedScalar, Point, Rational};
use crate::interval::{ChainSide, IntervalError, IntervalModule, StaircaseInterval};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("{path}: {}: {source}", variant_name(.source))]
    Interval { path: String, source: IntervalError },
    #[error("{path}: {source}")]
    Grid { path: String, source: DimError },
}

impl DocumentError {
    /// Whether the document parsed but describes invalid geometry or grids.
    pub fn is_validation(&self) -> bool {
        matches!(self, DocumentError::Interval { .. } | DocumentError::Grid { .. })
    }
}

fn variant_name(e: &IntervalError) -> &'static str {
    match e {
        IntervalError::EmptyChain { .. } => "EmptyChain",
        IntervalError::NonMonotoneChain { .. } => "NonMonotoneChain",
        IntervalError::NonRectilinearEdge { .. } => "NonRectilinearEdge",
        IntervalError::ChainsEndpointMismatch => "ChainsEndpointMismatch",
        IntervalError::EmptyRegion { .. } => "EmptyRegion",
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedModule {
    pub name: String,
    pub module: IntervalModule,
}

/// Where and how finely to sample, and optionally the sampled values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridBlock {
    pub shape: Vec<usize>,
    pub origin: Option<Vec<Rational>>,
    pub spacing: Option<Rational>,
    pub values: Option<GridFunction>,
}

impl GridBlock {
    pub fn origin_or_zero(&self) -> Vec<Rational> {
        self.origin.clone().unwrap_or_else(|| vec![Rational::from_integer(0.into()); self.shape.len()])
    }

    pub fn spacing_or_one(&self) -> Rational {
        self.spacing.clone().unwrap_or_else(|| Rational::from_integer(1.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDocument {
    pub format_version: String,
    pub modules: Vec<NamedModule>,
    pub grid: Option<GridBlock>,
}

impl ModuleDocument {
    pub fn new(modules: Vec<NamedModule>) -> Self {
        ModuleDocument { format_version: FORMAT_VERSION.into(), modules, grid: None }
    }

    pub fn module(&self, name: &str) -> Option<&IntervalModule> {
        self.modules.iter().find(|m| m.name == name).map(|m| &m.module)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    format_version: String,
    #[serde(default)]
    modules: Vec<RawModule>,
    grid: Option<RawGrid>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    name: String,
    intervals: Vec<RawInterval>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInterval {
    lower: Vec<[String; 2]>,
    upper: Vec<[String; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    shape: Vec<usize>,
    origin: Option<Vec<String>>,
    spacing: Option<String>,
    values: Option<Vec<i64>>,
}

fn scalar(text: &str, path: impl FnOnce() -> String) -> Result<ExtendedScalar, DocumentError> {
    text.parse().map_err(|e: crate::extreal::ScalarParseError| DocumentError::Field { path: path(), message: e.to_string() })
}

fn finite(text: &str, path: impl Fn() -> String) -> Result<Rational, DocumentError> {
    match scalar(text, &path)? {
        ExtendedScalar::Finite(r) => Ok(r),
        _ => Err(DocumentError::Field { path: path(), message: "must be finite".into() }),
    }
}

fn chain(raw: &[[String; 2]], path: &str, side: &str) -> Result<Vec<Point>, DocumentError> {
    raw.iter()
        .enumerate()
        .map(|(k, [x, y])| {
            let at = |c: usize| move || format!("{path}.{side}[{k}][{c}]");
            Ok(Point::new(scalar(x, at(0))?, scalar(y, at(1))?))
        })
        .collect()
}

pub fn parse(text: &str) -> Result<ModuleDocument, DocumentError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if raw.format_version != FORMAT_VERSION {
        return Err(DocumentError::Field {
            path: "format_version".into(),
            message: format!("unsupported version {:?}, expected {FORMAT_VERSION:?}", raw.format_version),
        });
    }
    let mut modules = Vec::with_capacity(raw.modules.len());
    for (i, m) in raw.modules.iter().enumerate() {
        if raw.modules[..i].iter().any(|o| o.name == m.name) {
            return Err(DocumentError::Field { path: format!("modules[{i}].name"), message: format!("duplicate name {:?}", m.name) });
        }
        let mut summands = Vec::with_capacity(m.intervals.len());
        for (j, iv) in m.intervals.iter().enumerate() {
            let path = format!("modules[{i}].intervals[{j}]");
            let lower = chain(&iv.lower, &path, "lower")?;
            let upper = chain(&iv.upper, &path, "upper")?;
            let s = StaircaseInterval::new(lower, upper).map_err(|source| {
                let path = match &source {
                    IntervalError::EmptyChain { chain: side }
                    | IntervalError::NonMonotoneChain { chain: side, .. }
                    | IntervalError::NonRectilinearEdge { chain: side, .. } => match side {
                        ChainSide::Lower => format!("{path}.lower"),
                        ChainSide::Upper => format!("{path}.upper"),
                    },
                    _ => path.clone(),
                };
                DocumentError::Interval { path, source }
            })?;
            summands.push(s);
        }
        modules.push(NamedModule { name: m.name.clone(), module: IntervalModule::new(summands) });
    }
    let grid = raw.grid.map(parse_grid).transpose()?;
    Ok(ModuleDocument { format_version: raw.format_version, modules, grid })
}

fn parse_grid(raw: RawGrid) -> Result<GridBlock, DocumentError> {
    if raw.shape.is_empty() || raw.shape.contains(&0) {
        return Err(DocumentError::Field { path: "grid.shape".into(), message: "axes must be nonempty".into() });
    }
    let origin = match raw.origin {
        Some(o) if o.len() != raw.shape.len() => {
            return Err(DocumentError::Field {
                path: "grid.origin".into(),
                message: format!("{} coordinates for {} axes", o.len(), raw.shape.len()),
            })
        }
        Some(o) => Some(
            o.iter()
                .enumerate()
                .map(|(k, t)| finite(t, || format!("grid.origin[{k}]")))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => None,
    };
    let spacing = match raw.spacing {
        Some(t) => {
            let s = finite(&t, || "grid.spacing".into())?;
            if s <= Rational::from_integer(0.into()) {
                return Err(DocumentError::Field { path: "grid.spacing".into(), message: "must be positive".into() });
            }
            Some(s)
        }
        None => None,
    };
    let values = raw
        .values
        .map(|v| GridFunction::new(&raw.shape, v).map_err(|source| DocumentError::Grid { path: "grid.values".into(), source }))
        .transpose()?;
    Ok(GridBlock { shape: raw.shape, origin, spacing, values })
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn point_list(vs: &[Point]) -> String {
    let items: Vec<String> = vs.iter().map(|p| format!("[{}, {}]", quote(&p.x.to_string()), quote(&p.y.to_string()))).collect();
    format!("[{}]", items.join(", "))
}

/// Canonical text: two-space indentation, one vertex list per line,
/// coordinates in lowest terms.
pub fn serialize(doc: &ModuleDocument) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"format_version\": {},", quote(&doc.format_version));
    out.push_str("  \"modules\": [");
    for (i, m) in doc.modules.iter().enumerate() {
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        let _ = write!(out, "    {{\n      \"name\": {},\n      \"intervals\": [", quote(&m.name));
        for (j, s) in m.module.summands.iter().enumerate() {
            out.push_str(if j == 0 { "\n" } else { ",\n" });
            let _ = write!(
                out,
                "        {{\n          \"lower\": {},\n          \"upper\": {}\n        }}",
                point_list(s.lower().vertices()),
                point_list(s.upper().vertices())
            );
        }
        out.push_str(if m.module.summands.is_empty() { "]\n    }" } else { "\n      ]\n    }" });
    }
    out.push_str(if doc.modules.is_empty() { "]" } else { "\n  ]" });
    if let Some(g) = &doc.grid {
        out.push_str(",\n  \"grid\": {\n");
        let shape: Vec<String> = g.shape.iter().map(usize::to_string).collect();
        let mut fields = vec![format!("    \"shape\": [{}]", shape.join(", "))];
        if let Some(o) = &g.origin {
            let items: Vec<String> = o.iter().map(|r| quote(&ExtendedScalar::Finite(r.clone()).to_string())).collect();
            fields.push(format!("    \"origin\": [{}]", items.join(", ")));
        }
        if let Some(s) = &g.spacing {
            fields.push(format!("    \"spacing\": {}", quote(&ExtendedScalar::Finite(s.clone()).to_string())));
        }
        if let Some(v) = &g.values {
            let items: Vec<String> = v.values.iter().map(i64::to_string).collect();
            fields.push(format!("    \"values\": [{}]", items.join(", ")));
        }
        out.push_str(&fields.join(",\n"));
        out.push_str("\n  }");
    }
    out.push_str("\n}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::{rat, ratio};

    const SQUARE: &str = r#"{
  "format_version": "1",
  "modules": [
    {
      "name": "M",
      "intervals": [
        {
          "lower": [["0", "2"], ["0", "0"], ["2", "0"]],
          "upper": [["0", "2"], ["2", "2"], ["2", "0"]]
        }
      ]
    }
  ]
}
"#;

    #[test]
    fn square_document() {
        let doc = parse(SQUARE).unwrap();
        assert_eq!(doc.modules.len(), 1);
        let want = StaircaseInterval::rectangle(0.into(), 0.into(), 2.into(), 2.into()).unwrap();
        assert_eq!(doc.modules[0].module.summands, vec![want]);
        assert_eq!(serialize(&doc), SQUARE);
    }

    #[test]
    fn fractions_and_infinities() {
        let text = SQUARE.replace(r#"["2", "0"]]"#, r#"["inf", "0"]]"#).replace(r#"["2", "2"], ["inf", "0"]]"#, r#"["inf", "2"], ["inf", "0"]]"#);
        let doc = parse(&text.replace(r#"["0", "0"]"#, r#"["0", "1/3"]"#).replace(r#"["inf", "0"]]"#, r#"["inf", "1/3"]]"#)).unwrap();
        let s = &doc.modules[0].module.summands[0];
        assert_eq!(s.bottom_right(), &Point::new(ExtendedScalar::PosInf, ExtendedScalar::Finite(ratio(1, 3))));
        let quadrant = SQUARE
            .replace(r#"["0", "2"], ["0", "0"], ["2", "0"]"#, r#"["0", "inf"], ["0", "0"], ["inf", "0"]"#)
            .replace(r#"["0", "2"], ["2", "2"], ["2", "0"]"#, r#"["0", "inf"], ["inf", "inf"], ["inf", "0"]"#);
        let doc = parse(&quadrant).unwrap();
        assert_eq!(serialize(&doc), quadrant);
    }

    #[test]
    fn decimals_canonicalize() {
        let doc = parse(&SQUARE.replace(r#"["2", "0"]]"#, r#"["2.0", "0"]]"#)).unwrap();
        assert_eq!(serialize(&doc), SQUARE);
        assert_eq!(serialize(&parse(&serialize(&doc)).unwrap()), SQUARE);
    }

    #[test]
    fn errors_carry_locations() {
        match parse("{\n  \"format_version\": \"1\",\n  \"modules\": [,]\n}") {
            Err(DocumentError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse(&SQUARE.replace(r#"["0", "0"]"#, r#"["0", "x"]"#)) {
            Err(DocumentError::Field { path, .. }) => assert_eq!(path, "modules[0].intervals[0].lower[1][1]"),
            other => panic!("{other:?}"),
        }
        let err = parse(&SQUARE.replace(r#"["2", "2"], ["2", "0"]]"#, r#"["3", "2"], ["3", "0"]]"#)).unwrap_err();
        assert!(err.is_validation());
        assert!(err.to_string().contains("ChainsEndpointMismatch"), "{err}");
        assert!(parse(&SQUARE.replace("\"1\"", "\"2\"")).is_err());
    }

    #[test]
    fn grid_block() {
        let text = SQUARE.replace(
            "\n  ]\n}",
            "\n  ],\n  \"grid\": {\n    \"shape\": [2, 3],\n    \"origin\": [\"0\", \"1/2\"],\n    \"spacing\": \"1/2\",\n    \"values\": [1, 1, 0, 0, 1, 0]\n  }\n}",
        );
        let doc = parse(&text).unwrap();
        let g = doc.grid.as_ref().unwrap();
        assert_eq!(g.shape, vec![2, 3]);
        assert_eq!(g.origin_or_zero(), vec![rat(0), ratio(1, 2)]);
        assert_eq!(g.values.as_ref().unwrap().to_vec(), vec![1, 1, 0, 0, 1, 0]);
        assert_eq!(serialize(&doc), text);
        let bad = text.replace("[1, 1, 0, 0, 1, 0]", "[1, 1]");
        assert!(matches!(parse(&bad), Err(DocumentError::Grid { .. })));
    }
}
