//! Text and JSON renderings of links and invariant vectors.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::hbraid::{GeneratorKind, GeneratorLink};
use crate::scheme::{ComponentDecomposition, ComponentId};
use crate::stringlink::InvariantVector;
use crate::{Error, Int, Result};

fn generator_body(g: &GeneratorLink) -> String {
    match &g.kind {
        GeneratorKind::Clasp(c, d) => format!("a({c},{d})"),
        GeneratorKind::Clasper(j) => {
            let parts: Vec<String> = j.entries().iter().map(ToString::to_string).collect();
            format!("t({})", parts.join(","))
        }
    }
}

/// The document text of a word, with runs collapsed to powers.
pub fn serialize_word(l: &ComponentDecomposition, word: &[GeneratorLink]) -> String {
    let counts: Vec<String> = l.counts().iter().map(ToString::to_string).collect();
    let mut out = format!("colors: {}\n", counts.join(" "));
    let mut terms = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let g = &word[i];
        let mut run = 1;
        while i + run < word.len() && word[i + run] == *g {
            run += 1;
        }
        let exp = run as i64 * i64::from(g.sign);
        let body = generator_body(g);
        terms.push(if exp == 1 { body } else { format!("{body}^{exp}") });
        i += run;
    }
    if !terms.is_empty() {
        out.push_str(&terms.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonEntry {
    seq: Vec<[usize; 2]>,
    value: Value,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonVector {
    colors: Vec<usize>,
    mu: Vec<JsonEntry>,
}

fn int_value(v: &Int) -> Value {
    match v.to_i64() {
        Some(x) => Value::from(x),
        None => Value::from(v.to_string()),
    }
}

/// JSON object with the color counts and every canonical coordinate.
/// Values outside the `i64` range are written as decimal strings.
pub fn invariants_json(v: &InvariantVector<Int>) -> String {
    let doc = JsonVector {
        colors: v.ambient().counts().to_vec(),
        mu: v
            .iter()
            .map(|(j, x)| JsonEntry {
                seq: j.entries().iter().map(|c| [c.color, c.index]).collect(),
                value: int_value(x),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("serializable")
}

/// Reads back the output of [`invariants_json`].
pub fn invariants_from_json(text: &str) -> Result<InvariantVector<Int>> {
    let bad = |m: &str| Error::InvalidSequence(format!("invariant document: {m}"));
    let doc: JsonVector = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let l = ComponentDecomposition::new(doc.colors)?;
    let template = InvariantVector::<Int>::zero(&l);
    if template.len() != doc.mu.len() {
        return Err(bad("wrong number of entries"));
    }
    let mut values = Vec::with_capacity(doc.mu.len());
    for (j, e) in template.sequences().iter().zip(doc.mu) {
        let seq: Vec<ComponentId> = e.seq.iter().map(|&[i, k]| ComponentId::new(i, k)).collect();
        if seq != j.entries() {
            return Err(bad("entries out of order"));
        }
        let x = match e.value {
            Value::Number(n) => n.as_i64().map(Int::from).ok_or_else(|| bad("non-integer value"))?,
            Value::String(s) => s.parse::<Int>().map_err(|_| bad("non-integer value"))?,
            _ => return Err(bad("non-integer value")),
        };
        values.push(x);
    }
    InvariantVector::from_values(&l, values)
}

/// Tab-separated `seq`/`value` table.
pub fn invariants_tsv(v: &InvariantVector<Int>) -> String {
    let mut out = String::from("seq\tvalue\n");
    for (j, x) in v.iter() {
        out.push_str(&format!("{j}\t{x}\n"));
    }
    out
}

/// One `mu(...) = v` line per coordinate.
pub fn invariants_text(v: &InvariantVector<Int>) -> String {
    v.iter().map(|(j, x)| format!("mu{j} = {x}\n")).collect()
}
