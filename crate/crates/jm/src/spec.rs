//! Parser for model specifications such as `EqTR[G=(12),(34);pi=random]@4`.

use jm_core::catalog::{sample_distributions, DistributionVector, Family, ModelSpec};
use jm_core::rational::parse_rational;
use jm_core::{PermGroup, RationalMatrix};

use crate::CliError;

/// Where a family's distribution vector comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PiChoice {
    Given(DistributionVector),
    /// Sampled from the report seed.
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Ci,
    Ei,
    Symm,
    Anti,
    Ds,
    Gm,
    GroupBased,
    EiPlusSymm,
    EiPlusGroupBased,
    Gtr,
    Tn,
    Hky,
    EqTr,
    Equivariant,
    Custom,
}

impl FamilyKind {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "CI" => Self::Ci,
            "EI" | "F81" => Self::Ei,
            "Symm" => Self::Symm,
            "Anti" => Self::Anti,
            "DS" => Self::Ds,
            "GM" => Self::Gm,
            "GroupBased" => Self::GroupBased,
            "EI+Symm" => Self::EiPlusSymm,
            "EI+GroupBased" => Self::EiPlusGroupBased,
            "GTR" => Self::Gtr,
            "TN" | "TN93" => Self::Tn,
            "HKY" => Self::Hky,
            "EqTR" => Self::EqTr,
            "Equivariant" => Self::Equivariant,
            "Custom" => Self::Custom,
            _ => return None,
        })
    }

    pub fn needs_pi(self) -> bool {
        matches!(self, Self::Gtr | Self::Tn | Self::Hky | Self::EqTr)
    }

    pub fn needs_group(self) -> bool {
        matches!(self, Self::GroupBased | Self::EiPlusGroupBased | Self::EqTr | Self::Equivariant)
    }
}

/// A parsed but not yet instantiated model specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedSpec {
    pub text: String,
    pub kind: FamilyKind,
    pub n: usize,
    pub group: Option<PermGroup>,
    pub pi: Option<PiChoice>,
    pub basis: Option<Vec<RationalMatrix>>,
}

/// Parses `NAME[key=value;...]@n`. A bare bracket value is read as the group
/// for group families and as `pi` for reversible families.
pub fn parse_spec(text: &str) -> Result<ParsedSpec, CliError> {
    let text = text.trim();
    let (head, n) = text
        .rsplit_once('@')
        .ok_or_else(|| CliError::Parse(format!("{text:?}: missing '@n'")))?;
    let n: usize = n
        .trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("{text:?}: '{n}' is not a state count")))?;
    if n == 0 {
        return Err(CliError::Parse(String::from("state count must be positive")));
    }
    let (name, params) = match head.find('[') {
        Some(open) => {
            let inner = head[open + 1..]
                .strip_suffix(']')
                .ok_or_else(|| CliError::Parse(format!("{text:?}: unbalanced '['")))?;
            (&head[..open], Some(inner))
        }
        None => (head, None),
    };
    let kind = FamilyKind::from_name(name.trim())
        .ok_or_else(|| CliError::Parse(format!("unknown model family {:?}", name.trim())))?;

    let mut group = None;
    let mut pi = None;
    for part in params.into_iter().flat_map(|p| p.split(';')).map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = match part.split_once('=') {
            Some((k, v)) => (k.trim(), v.trim()),
            None if kind.needs_group() => ("G", part),
            None if kind.needs_pi() => ("pi", part),
            None => return Err(CliError::Parse(format!("{name} takes no parameters"))),
        };
        match key {
            "G" if kind.needs_group() => group = Some(parse_group(value, n)?),
            "pi" if kind.needs_pi() => pi = Some(parse_pi(value, n)?),
            _ => return Err(CliError::Parse(format!("{name} does not accept parameter {key:?}"))),
        }
    }
    Ok(ParsedSpec {
        text: text.to_string(),
        kind,
        n,
        group,
        pi,
        basis: None,
    })
}

pub fn parse_group(text: &str, n: usize) -> Result<PermGroup, CliError> {
    PermGroup::parse(text, n).map_err(|e| CliError::Parse(e.to_string()))
}

/// `random` or a comma-separated list of rationals summing to one.
pub fn parse_pi(text: &str, n: usize) -> Result<PiChoice, CliError> {
    if text == "random" {
        return Ok(PiChoice::Random);
    }
    let values = text
        .split(',')
        .map(|v| parse_rational(v.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Parse(e.to_string()))?;
    if values.len() != n {
        return Err(CliError::Parse(format!("pi has {} entries, expected {n}", values.len())));
    }
    DistributionVector::new(values)
        .map(PiChoice::Given)
        .map_err(|e| CliError::Parse(e.to_string()))
}

impl ParsedSpec {
    /// The distribution vectors to evaluate: the given one, or `samples`
    /// draws from `seed`. Empty for families without `π`.
    pub fn distributions(&self, samples: usize, seed: u64) -> Vec<DistributionVector> {
        if !self.kind.needs_pi() {
            return Vec::new();
        }
        match self.pi.as_ref().unwrap_or(&PiChoice::Random) {
            PiChoice::Given(pi) => vec![pi.clone()],
            PiChoice::Random => sample_distributions(self.n, samples, seed),
        }
    }

    pub fn is_sampled(&self) -> bool {
        self.kind.needs_pi() && !matches!(self.pi, Some(PiChoice::Given(_)))
    }

    /// Resolves to a concrete model for one distribution vector (ignored by
    /// families without `π`).
    pub fn instantiate(&self, pi: Option<&DistributionVector>) -> Result<ModelSpec, CliError> {
        let n = self.n;
        let group = || {
            self.group
                .clone()
                .ok_or_else(|| CliError::Parse(format!("{}: a group G=... is required", self.text)))
        };
        let pi = || {
            pi.cloned()
                .ok_or_else(|| CliError::Parse(format!("{}: a distribution pi=... is required", self.text)))
        };
        let family = match self.kind {
            FamilyKind::Ci => Family::Ci,
            FamilyKind::Ei => Family::Ei,
            FamilyKind::Symm => Family::Symm,
            FamilyKind::Anti => Family::Anti,
            FamilyKind::Ds => Family::Ds,
            FamilyKind::Gm => Family::Gm,
            FamilyKind::GroupBased => Family::GroupBased(group()?),
            FamilyKind::EiPlusSymm => Family::EiPlusSymm,
            FamilyKind::EiPlusGroupBased => Family::EiPlusGroupBased(group()?),
            FamilyKind::Gtr => Family::Gtr(pi()?),
            FamilyKind::Tn => Family::Tn(pi()?),
            FamilyKind::Hky => Family::Hky(pi()?),
            FamilyKind::EqTr => Family::EquivariantTr(pi()?, group()?),
            FamilyKind::Equivariant => Family::Equivariant(group()?),
            FamilyKind::Custom => Family::Custom(
                self.basis
                    .clone()
                    .ok_or_else(|| CliError::Parse(String::from("Custom models need --basis FILE")))?,
            ),
        };
        Ok(ModelSpec::new(family, n))
    }
}
