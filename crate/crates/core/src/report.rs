use std::fmt;

use serde::Serialize;

use crate::laurent::{BivarLaurent, Rational, UnivarLaurentT};

/// What a report was computed on.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReportContext {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub link: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub writhe: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_lk: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crossing: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub route: Option<String>,
}

impl fmt::Display for ReportContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(l) = &self.link {
            parts.push(l.clone());
        }
        if let Some(v) = self.components {
            parts.push(format!("L={v}"));
        }
        if let Some(v) = self.writhe {
            parts.push(format!("w={v}"));
        }
        if let Some(v) = self.total_lk {
            parts.push(format!("lk={v}"));
        }
        if let Some(v) = self.g {
            parts.push(format!("g={v}"));
        }
        if let Some(v) = self.crossing {
            parts.push(format!("crossing={v}"));
        }
        if let Some(v) = self.parameter {
            parts.push(format!("param={v}"));
        }
        if let Some(v) = &self.route {
            parts.push(format!("route={v}"));
        }
        f.write_str(&parts.join(" "))
    }
}

/// One checked equation `lhs = rhs`. Univariate values are stored as the
/// `z^0` part, rational values as constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub pass: bool,
    pub context: ReportContext,
    pub lhs: BivarLaurent,
    pub rhs: BivarLaurent,
    pub residual: BivarLaurent,
}

impl VerificationReport {
    pub fn new(
        identity: impl Into<String>,
        context: ReportContext,
        lhs: BivarLaurent,
        rhs: BivarLaurent,
    ) -> Self {
        let residual = &lhs - &rhs;
        Self {
            identity: identity.into(),
            pass: residual.is_zero(),
            context,
            lhs,
            rhs,
            residual,
        }
    }

    pub fn univariate(
        identity: impl Into<String>,
        context: ReportContext,
        lhs: &UnivarLaurentT,
        rhs: &UnivarLaurentT,
    ) -> Self {
        Self::new(identity, context, lhs.lift(0), rhs.lift(0))
    }

    pub fn rational(
        identity: impl Into<String>,
        context: ReportContext,
        lhs: Rational,
        rhs: Rational,
    ) -> Self {
        Self::new(
            identity,
            context,
            BivarLaurent::constant(lhs),
            BivarLaurent::constant(rhs),
        )
    }

    /// `PASS identity [context]`, with both sides appended on failure.
    pub fn summary_line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {} [{}]", self.identity, self.context);
        if !self.pass {
            line.push_str(&format!(
                " lhs={} rhs={} residual={}",
                self.lhs, self.rhs, self.residual
            ));
        }
        line
    }
}
