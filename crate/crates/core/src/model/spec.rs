use std::fmt;
use std::str::FromStr;

use super::{ModelCatalog, ModelError, ModelGraph, SignalModel};
use crate::linalg::RMatrix;
use crate::poly::{parse_rational, rat, ChebyshevKind, Rational, Recurrence};
use crate::transforms::Dtt;

/// Model families accepted by [`ModelSpec`]'s parser.
pub const MODEL_FAMILIES: &[&str] = &[
    "time",
    "alternative-space",
    "dct[1-8]-model",
    "dst[1-8]-model",
    "dct[1-8]-symmetric",
    "dst[1-8]-symmetric",
    "skew-dct3",
    "skew-dst3",
    "skew-dct4",
    "skew-dst4",
    "gnn-legendre",
    "gnn-t",
    "gnn-u",
    "gnn-v",
    "gnn-w",
];

#[derive(Clone, Debug, PartialEq)]
pub enum ModelFamily {
    Time,
    AlternativeSpace,
    Dtt(Dtt),
    DttSymmetric(Dtt),
    Skew(ChebyshevKind),
    Gnn(String),
}

/// A parsed model description such as `dct2-model:8`, `time:6:a=2` or
/// `skew-dct4:5:r=1/3`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub family: ModelFamily,
    pub n: usize,
    /// Boundary constant `a` of the time and space models.
    pub a: Rational,
    /// Skew parameter `r`.
    pub r: Rational,
}

/// A built model, exact when its boundary polynomial has rational coefficients.
#[derive(Clone, Debug)]
pub enum AnyModel {
    Exact(SignalModel),
    Real(SignalModel<f64>),
}

fn unknown(s: &str) -> ModelError {
    ModelError::Spec(format!(
        "unknown model '{s}'; valid families: {}",
        MODEL_FAMILIES.join(", ")
    ))
}

fn skew_kind(name: &str) -> Option<ChebyshevKind> {
    match name {
        "dct3" => Some(ChebyshevKind::T),
        "dst3" => Some(ChebyshevKind::U),
        "dct4" => Some(ChebyshevKind::V),
        "dst4" => Some(ChebyshevKind::W),
        _ => None,
    }
}

fn parse_family(head: &str) -> Option<ModelFamily> {
    match head {
        "time" => return Some(ModelFamily::Time),
        "alternative-space" | "space" => return Some(ModelFamily::AlternativeSpace),
        _ => {}
    }
    if let Some(rest) = head.strip_prefix("skew-") {
        let rest = rest.strip_suffix("-model").unwrap_or(rest);
        return skew_kind(rest).map(ModelFamily::Skew);
    }
    if let Some(rest) = head.strip_prefix("gnn-") {
        return Recurrence::named(rest, 1).map(|_| ModelFamily::Gnn(rest.to_string()));
    }
    if let Some(rest) = head.strip_suffix("-symmetric") {
        return rest.parse().ok().map(ModelFamily::DttSymmetric);
    }
    let rest = head.strip_suffix("-model").unwrap_or(head);
    rest.parse().ok().map(ModelFamily::Dtt)
}

impl FromStr for ModelSpec {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim().to_ascii_lowercase();
        let mut fields = text.split(':');
        let head = fields.next().unwrap_or_default();
        let family = parse_family(head).ok_or_else(|| unknown(head))?;
        let mut spec = ModelSpec {
            family,
            n: 0,
            a: rat(1, 1),
            r: rat(1, 2),
        };
        let mut size = None;
        for field in fields {
            match field.split_once('=') {
                Some(("a", v)) => {
                    spec.a = parse_rational(v)
                        .ok_or_else(|| ModelError::Spec(format!("bad rational a = '{v}'")))?
                }
                Some(("r", v)) => {
                    spec.r = parse_rational(v)
                        .ok_or_else(|| ModelError::Spec(format!("bad rational r = '{v}'")))?
                }
                Some(("n", v)) => size = Some(v.to_string()),
                Some((key, _)) => return Err(ModelError::Spec(format!("unknown key '{key}'"))),
                None => size = Some(field.to_string()),
            }
        }
        let size = size.ok_or_else(|| ModelError::Spec(format!("{s}: missing size")))?;
        spec.n = size
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| ModelError::Spec(format!("{s}: bad size '{size}'")))?;
        Ok(spec)
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            ModelFamily::Time => write!(f, "time:{}:a={}", self.n, self.a),
            ModelFamily::AlternativeSpace => write!(f, "alternative-space:{}:a={}", self.n, self.a),
            ModelFamily::Dtt(d) => write!(f, "{}-model:{}", lower(d), self.n),
            ModelFamily::DttSymmetric(d) => write!(f, "{}-symmetric:{}", lower(d), self.n),
            ModelFamily::Skew(k) => {
                let name = match k {
                    ChebyshevKind::T => "dct3",
                    ChebyshevKind::U => "dst3",
                    ChebyshevKind::V => "dct4",
                    ChebyshevKind::W => "dst4",
                };
                write!(f, "skew-{name}:{}:r={}", self.n, self.r)
            }
            ModelFamily::Gnn(name) => write!(f, "gnn-{name}:{}", self.n),
        }
    }
}

fn lower(d: &Dtt) -> String {
    d.name().to_ascii_lowercase().replace('-', "")
}

impl ModelSpec {
    pub fn build(&self) -> Result<AnyModel, ModelError> {
        let n = self.n;
        let exact = match &self.family {
            ModelFamily::Time => ModelCatalog::time(n, &self.a)?,
            ModelFamily::AlternativeSpace => ModelCatalog::alternative_space(n, &self.a)?,
            ModelFamily::Dtt(d) => ModelCatalog::dtt(*d, n)?,
            ModelFamily::DttSymmetric(d) => ModelCatalog::dtt_symmetric(*d, n)?,
            ModelFamily::Skew(kind) => {
                return Ok(match ModelCatalog::skew_exact(*kind, n, &self.r)? {
                    Some(m) => AnyModel::Exact(m),
                    None => AnyModel::Real(ModelCatalog::skew(*kind, n, &self.r)?),
                })
            }
            ModelFamily::Gnn(name) => {
                let rec = Recurrence::named(name, n + 1).ok_or_else(|| unknown(name))?;
                ModelCatalog::gnn(&rec, n)?
            }
        };
        Ok(AnyModel::Exact(exact))
    }
}

impl AnyModel {
    pub fn name(&self) -> &str {
        match self {
            AnyModel::Exact(m) => &m.name,
            AnyModel::Real(m) => &m.name,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AnyModel::Exact(m) => m.n(),
            AnyModel::Real(m) => m.n(),
        }
    }

    /// The model with `f64` coefficients.
    pub fn real(&self) -> SignalModel<f64> {
        match self {
            AnyModel::Exact(m) => m.to_real(),
            AnyModel::Real(m) => m.clone(),
        }
    }

    pub fn shift_matrix(&self) -> Result<RMatrix, ModelError> {
        match self {
            AnyModel::Exact(m) => m.shift_matrix(),
            AnyModel::Real(m) => m.shift_matrix(),
        }
    }

    pub fn visualize(&self) -> Result<ModelGraph, ModelError> {
        match self {
            AnyModel::Exact(m) => m.visualize(),
            AnyModel::Real(m) => m.visualize(),
        }
    }

    /// Coordinates of the virtual element `b_k`, printed exactly when possible.
    pub fn extension(&self, k: i64) -> Result<Vec<String>, ModelError> {
        Ok(match self {
            AnyModel::Exact(m) => m.extension(k)?.iter().map(ToString::to_string).collect(),
            AnyModel::Real(m) => m.extension(k)?.iter().map(ToString::to_string).collect(),
        })
    }

    pub fn extension_period(&self, max_period: usize) -> Result<Option<usize>, ModelError> {
        match self {
            AnyModel::Exact(m) => m.extension_period(max_period),
            AnyModel::Real(m) => m.extension_period(max_period),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_catalog_names() {
        let spec: ModelSpec = "dct2-model:8".parse().unwrap();
        assert_eq!(spec.family, ModelFamily::Dtt(Dtt::dct(2)));
        assert_eq!(spec.n, 8);
        let spec: ModelSpec = "time:6:a=-1".parse().unwrap();
        assert_eq!(
            (spec.family.clone(), spec.a.clone()),
            (ModelFamily::Time, rat(-1, 1))
        );
        let spec: ModelSpec = "skew-dst4-model:5:r=1/3".parse().unwrap();
        assert_eq!(spec.family, ModelFamily::Skew(ChebyshevKind::W));
        assert_eq!(spec.r, rat(1, 3));
        assert_eq!(
            "gnn-legendre:4".parse::<ModelSpec>().unwrap().family,
            ModelFamily::Gnn("legendre".into())
        );
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "dst7-model:5",
            "time:4:a=2",
            "skew-dct4:6:r=1/4",
            "dct1-symmetric:5",
        ] {
            let spec: ModelSpec = text.parse().unwrap();
            assert_eq!(spec.to_string().parse::<ModelSpec>().unwrap(), spec);
        }
    }

    #[test]
    fn unknown_names_list_families() {
        let err = "wavelet:8".parse::<ModelSpec>().unwrap_err().to_string();
        assert!(err.contains("dct[1-8]-model") && err.contains("gnn-legendre"));
        assert!("dct2-model".parse::<ModelSpec>().is_err());
        assert!("dct2-model:0".parse::<ModelSpec>().is_err());
    }

    #[test]
    fn irrational_skew_falls_back_to_real() {
        let built = "skew-dct3:4:r=1/5"
            .parse::<ModelSpec>()
            .unwrap()
            .build()
            .unwrap();
        assert!(matches!(built, AnyModel::Real(_)));
        let built = "skew-dct3:4:r=1/3"
            .parse::<ModelSpec>()
            .unwrap()
            .build()
            .unwrap();
        assert!(matches!(built, AnyModel::Exact(_)));
    }

    #[test]
    fn dct2_graph_is_a_path_with_end_loops() {
        let g = "dct2-model:5"
            .parse::<ModelSpec>()
            .unwrap()
            .build()
            .unwrap()
            .visualize()
            .unwrap();
        let a = &g.adjacency;
        assert!(a[(0, 0)] != 0.0 && a[(4, 4)] != 0.0);
        assert!((1..4).all(|i| a[(i, i)] == 0.0));
        assert!((0..4).all(|i| a[(i, i + 1)] != 0.0 && a[(i + 1, i)] != 0.0));
        assert_eq!(g.edges().len(), 2 + 2 * 4);
    }
}
