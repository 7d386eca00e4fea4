//! Compact string grammar for transform specs.
//!
//! ```text
//! spec   := "tensor(" spec ("," spec)* ")" | head (":" field)*
//! head   := family [type]            e.g. dct2, dft, rdft3, idct4, gnn
//! field  := size | key "=" value     keys: r, variant, poly, nodes
//! ```
//!
//! Examples: `dct2:8`, `dct4:3:r=1/3:variant=unscaled`, `qdft:16`,
//! `gnn:8:poly=legendre`, `vandermonde:3:nodes=1;0.5;-1`, `tensor(dct2:8,dct2:8)`.

use std::fmt;
use std::str::FromStr;

use super::{TransformError, Trig};
use crate::poly::{parse_rational, rat, ChebyshevKind, Rational};

/// Family names accepted by the parser.
pub const FAMILY_NAMES: &[&str] = &[
    "dft[1-4]",
    "rdft[1-4]",
    "dht[1-4]",
    "qdft",
    "dct[1-8]",
    "dst[1-8]",
    "skew-dct3",
    "skew-dst3",
    "skew-dct4",
    "skew-dst4",
    "idct3",
    "idst3",
    "idct4",
    "idst4",
    "gnn",
    "vandermonde",
    "tensor(...)",
];

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Dft,
    Rdft,
    Dht,
    Qdft,
    Dtt(Trig),
    /// Skew DTT whose polynomial version uses the given basis.
    Skew(ChebyshevKind),
    InverseSkew(ChebyshevKind),
    Gnn,
    Vandermonde,
    Tensor(Vec<TransformSpec>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Unscaled,
    Polynomial,
    Orthogonal,
    Unitary,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Unscaled => "unscaled",
            Self::Polynomial => "polynomial",
            Self::Orthogonal => "orthogonal",
            Self::Unitary => "unitary",
        })
    }
}

impl FromStr for Variant {
    type Err = TransformError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unscaled" => Ok(Self::Unscaled),
            "polynomial" | "poly" => Ok(Self::Polynomial),
            "orthogonal" | "ortho" => Ok(Self::Orthogonal),
            "unitary" => Ok(Self::Unitary),
            other => Err(TransformError::InvalidParameter(format!(
                "unknown variant '{other}' (expected unscaled, polynomial, orthogonal, unitary)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransformSpec {
    pub family: Family,
    pub ty: u8,
    pub n: usize,
    pub variant: Variant,
    pub r: Rational,
    /// Recurrence name for the GNN family.
    pub poly: Option<String>,
    /// Evaluation nodes for the Vandermonde family.
    pub nodes: Option<Vec<f64>>,
}

impl TransformSpec {
    pub fn new(family: Family, ty: u8, n: usize) -> Self {
        Self {
            family,
            ty,
            n,
            variant: Variant::Unscaled,
            r: rat(1, 2),
            poly: None,
            nodes: None,
        }
    }

    pub fn tensor(parts: Vec<TransformSpec>) -> Self {
        let n = parts.iter().map(|p| p.n).product();
        Self::new(Family::Tensor(parts), 0, n)
    }

    pub fn with_variant(&self, variant: Variant) -> Self {
        Self {
            variant,
            ..self.clone()
        }
    }

    /// Human-readable family name, e.g. `DCT-2`.
    pub fn family_name(&self) -> String {
        match &self.family {
            Family::Dft => format!("DFT-{}", self.ty),
            Family::Rdft => format!("RDFT-{}", self.ty),
            Family::Dht => format!("DHT-{}", self.ty),
            Family::Qdft => "QDFT".into(),
            Family::Dtt(Trig::Cos) => format!("DCT-{}", self.ty),
            Family::Dtt(Trig::Sin) => format!("DST-{}", self.ty),
            Family::Skew(k) => format!("skew {}", super::skew_name(*k)),
            Family::InverseSkew(k) => format!("inverse skew {}", super::skew_name(*k)),
            Family::Gnn => "GNN".into(),
            Family::Vandermonde => "Vandermonde".into(),
            Family::Tensor(_) => "tensor".into(),
        }
    }

    fn head(&self) -> String {
        let short = |k: ChebyshevKind| match k {
            ChebyshevKind::T => "dct3",
            ChebyshevKind::U => "dst3",
            ChebyshevKind::V => "dct4",
            ChebyshevKind::W => "dst4",
        };
        match &self.family {
            Family::Dft => format!("dft{}", self.ty),
            Family::Rdft => format!("rdft{}", self.ty),
            Family::Dht => format!("dht{}", self.ty),
            Family::Qdft => "qdft".into(),
            Family::Dtt(Trig::Cos) => format!("dct{}", self.ty),
            Family::Dtt(Trig::Sin) => format!("dst{}", self.ty),
            Family::Skew(k) => format!("skew-{}", short(*k)),
            Family::InverseSkew(k) => format!("i{}", short(*k)),
            Family::Gnn => "gnn".into(),
            Family::Vandermonde => "vandermonde".into(),
            Family::Tensor(_) => "tensor".into(),
        }
    }
}

impl fmt::Display for TransformSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Family::Tensor(parts) = &self.family {
            let inner: Vec<String> = parts.iter().map(ToString::to_string).collect();
            return write!(f, "tensor({})", inner.join(","));
        }
        write!(f, "{}:{}", self.head(), self.n)?;
        if matches!(self.family, Family::Skew(_) | Family::InverseSkew(_)) {
            write!(f, ":r={}", self.r)?;
        }
        if let Some(poly) = &self.poly {
            write!(f, ":poly={poly}")?;
        }
        if let Some(nodes) = &self.nodes {
            let list: Vec<String> = nodes.iter().map(|v| format!("{v:?}")).collect();
            write!(f, ":nodes={}", list.join(";"))?;
        }
        if self.variant != Variant::Unscaled {
            write!(f, ":variant={}", self.variant)?;
        }
        Ok(())
    }
}

/// Splits at commas that are not nested inside parentheses.
fn split_top_level(s: &str) -> Result<Vec<&str>, TransformError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(TransformError::Syntax(s.into()));
        }
    }
    if depth != 0 {
        return Err(TransformError::Syntax(s.into()));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

fn parse_head(head: &str) -> Result<(Family, Option<u8>), TransformError> {
    let unknown = || TransformError::UnknownFamily(head.to_string());
    let skew_kind = |rest: &str| match rest {
        "dct3" => Some(ChebyshevKind::T),
        "dst3" => Some(ChebyshevKind::U),
        "dct4" => Some(ChebyshevKind::V),
        "dst4" => Some(ChebyshevKind::W),
        _ => None,
    };
    if let Some(rest) = head.strip_prefix("skew-") {
        return skew_kind(rest)
            .map(|k| (Family::Skew(k), None))
            .ok_or_else(unknown);
    }
    if let Some(rest) = head.strip_prefix('i') {
        if let Some(k) = skew_kind(rest) {
            return Ok((Family::InverseSkew(k), None));
        }
    }
    match head {
        "qdft" => return Ok((Family::Qdft, None)),
        "gnn" => return Ok((Family::Gnn, None)),
        "vandermonde" => return Ok((Family::Vandermonde, None)),
        _ => {}
    }
    let split = head
        .find(|c: char| c.is_ascii_digit())
        .unwrap_or(head.len());
    let (name, digits) = head.split_at(split);
    let ty = if digits.is_empty() {
        None
    } else {
        Some(digits.parse::<u8>().map_err(|_| unknown())?)
    };
    let family = match name {
        "dft" => Family::Dft,
        "rdft" => Family::Rdft,
        "dht" => Family::Dht,
        "dct" => Family::Dtt(Trig::Cos),
        "dst" => Family::Dtt(Trig::Sin),
        _ => return Err(unknown()),
    };
    Ok((family, ty))
}

impl FromStr for TransformSpec {
    type Err = TransformError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim().to_ascii_lowercase();
        if let Some(inner) = text.strip_prefix("tensor(") {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| TransformError::Syntax(s.into()))?;
            let parts = split_top_level(inner)?
                .into_iter()
                .map(str::parse)
                .collect::<Result<Vec<TransformSpec>, _>>()?;
            if parts.is_empty() {
                return Err(TransformError::Syntax(s.into()));
            }
            return Ok(TransformSpec::tensor(parts));
        }
        let mut fields = text.split(':');
        let head = fields.next().unwrap_or_default();
        let (mut family, ty) = parse_head(head)?;
        let mut spec = TransformSpec::new(family.clone(), ty.unwrap_or(1), 0);
        let mut size = None;
        let mut explicit_r = false;
        for field in fields {
            if let Some((key, value)) = field.split_once('=') {
                match key {
                    "r" => {
                        spec.r = parse_rational(value).ok_or_else(|| {
                            TransformError::InvalidParameter(format!("bad rational r = '{value}'"))
                        })?;
                        explicit_r = true;
                    }
                    "variant" => spec.variant = value.parse()?,
                    "poly" => spec.poly = Some(value.to_string()),
                    "nodes" => {
                        let nodes = value
                            .split(';')
                            .map(|v| v.trim().parse::<f64>())
                            .collect::<Result<Vec<_>, _>>()
                            .map_err(|_| {
                                TransformError::InvalidParameter(format!("bad nodes '{value}'"))
                            })?;
                        spec.nodes = Some(nodes);
                    }
                    "n" => size = Some(value.to_string()),
                    other => {
                        return Err(TransformError::InvalidParameter(format!(
                            "unknown key '{other}'"
                        )))
                    }
                }
            } else {
                size = Some(field.to_string());
            }
        }
        let size = size.ok_or_else(|| TransformError::Syntax(format!("{s}: missing size")))?;
        spec.n = size
            .parse()
            .map_err(|_| TransformError::Syntax(format!("{s}: bad size '{size}'")))?;
        let max_type = match family {
            Family::Dft | Family::Rdft | Family::Dht => 4,
            Family::Dtt(_) => 8,
            _ => 1,
        };
        if ty.is_some() && max_type == 1 || !(1..=max_type).contains(&spec.ty) {
            return Err(TransformError::InvalidType(head.to_string()));
        }
        if explicit_r {
            if let Family::Dtt(trig) = family {
                let kind = match (trig, spec.ty) {
                    (Trig::Cos, 3) => ChebyshevKind::T,
                    (Trig::Sin, 3) => ChebyshevKind::U,
                    (Trig::Cos, 4) => ChebyshevKind::V,
                    (Trig::Sin, 4) => ChebyshevKind::W,
                    _ => {
                        return Err(TransformError::InvalidParameter(format!(
                            "r applies only to types 3 and 4, not {}",
                            spec.family_name()
                        )))
                    }
                };
                family = Family::Skew(kind);
                spec.ty = 1;
            }
        }
        spec.family = family;
        Ok(spec)
    }
}
