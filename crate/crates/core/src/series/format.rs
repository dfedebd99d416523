use serde::{Deserialize, Serialize};

use super::Series;
use crate::error::{EneError, Result};
use crate::ring::{Ring, RingDescriptor};

/// Wire form of a series: ring descriptor, order, and coefficient strings in
/// the ring's text encoding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub ring: RingDescriptor,
    pub order: usize,
    pub coeffs: Vec<String>,
}

fn power(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "X".to_string(),
        _ => format!("X^{k}"),
    }
}

impl<R: Ring> Series<R> {
    /// Canonical human-readable form, e.g. `1 - 3*X + 2*X^2 + O(X^3)`.
    pub fn pretty(&self) -> String {
        let r = self.ring();
        let mut out = String::new();
        for (k, c) in self.coeffs().iter().enumerate() {
            if r.is_exact_zero(c) {
                continue;
            }
            let x = power(k);
            let mut negative = false;
            let mut text = r.format_coeff(c);
            if r.is_atomic(c) {
                if let Some(rest) = text.strip_prefix('-') {
                    negative = true;
                    text = rest.to_string();
                }
            } else if k > 0 {
                text = format!("({text})");
            }
            let body = match k {
                0 => text,
                _ if text == "1" => x,
                _ => format!("{text}*{x}"),
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out.push_str(&format!(" + O({})", power(self.order() + 1)));
        out
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            ring: self.ring().descriptor(),
            order: self.order(),
            coeffs: self.coeffs().iter().map(|c| self.ring().format(c)).collect(),
        }
    }

    pub fn from_json(ring: &R, json: &SeriesJson) -> Result<Series<R>> {
        if json.ring != ring.descriptor() {
            return Err(EneError::RingMismatch {
                left: json.ring.to_string(),
                right: ring.descriptor().to_string(),
            });
        }
        if json.coeffs.len() != json.order + 1 {
            return Err(EneError::invalid(
                "series json",
                format!("order {} needs {} coefficients", json.order, json.order + 1),
            ));
        }
        let coeffs = json
            .coeffs
            .iter()
            .map(|c| ring.parse(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Series::new(ring.clone(), coeffs))
    }
}
