//! Reports in two renderings: a readable summary and line-stable `key=value` text.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use dpflex::discharge::Charge;
use dpflex::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

enum Item {
    Field(String, String),
    Exact(String, String, String),
    Record(String, Vec<(String, String)>),
    Block(String, String),
}

#[derive(Default)]
pub struct Report {
    items: Vec<Item>,
}

impl Report {
    pub fn field(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.items.push(Item::Field(key.into(), value.to_string()));
        self
    }

    pub fn rational(&mut self, key: &str, r: &Rational) -> &mut Self {
        self.items.push(Item::Exact(key.into(), r.to_string(), decimal(r.numer(), r.denom())));
        self
    }

    pub fn charge(&mut self, key: &str, c: Charge) -> &mut Self {
        self.items.push(Item::Exact(key.into(), c.to_string(), charge_decimal(c)));
        self
    }

    pub fn record(&mut self, name: &str, fields: Vec<(&str, String)>) -> &mut Self {
        self.items.push(Item::Record(name.into(), fields.into_iter().map(|(k, v)| (k.into(), v)).collect()));
        self
    }

    /// Multi-line text such as a `.cover` document.
    pub fn block(&mut self, key: &str, text: &str) -> &mut Self {
        self.items.push(Item::Block(key.into(), text.trim_end().into()));
        self
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for item in &self.items {
            match (item, format) {
                (Item::Field(k, v), Format::Human) => out.push_str(&format!("{k}: {v}\n")),
                (Item::Field(k, v), Format::Structured) => out.push_str(&format!("{k}={v}\n")),
                (Item::Exact(k, v, d), Format::Human) if v == d => out.push_str(&format!("{k}: {v}\n")),
                (Item::Exact(k, v, d), Format::Human) => out.push_str(&format!("{k}: {v} (~{d})\n")),
                (Item::Exact(k, v, d), Format::Structured) => {
                    out.push_str(&format!("{k}={v}\n{k}_decimal={d}\n"));
                }
                (Item::Record(name, fields), Format::Human) => {
                    let body: Vec<String> = fields.iter().map(|(k, v)| format!("{k} {v}")).collect();
                    out.push_str(&format!("  {name}: {}\n", body.join(", ")));
                }
                (Item::Record(name, fields), Format::Structured) => {
                    out.push_str(name);
                    for (k, v) in fields {
                        out.push_str(&format!(" {k}={v}"));
                    }
                    out.push('\n');
                }
                (Item::Block(k, text), Format::Human) => {
                    out.push_str(&format!("{k}:\n"));
                    for line in text.lines() {
                        out.push_str(&format!("    {line}\n"));
                    }
                }
                (Item::Block(k, text), Format::Structured) => {
                    for line in text.lines() {
                        out.push_str(&format!("{k}_line={line}\n"));
                    }
                }
            }
        }
        out
    }
}

const PLACES: usize = 12;

/// `p/q` rounded toward zero to at most twelve places, trailing zeros dropped.
pub fn decimal(p: &BigInt, q: &BigInt) -> String {
    let negative = p.is_negative() != q.is_negative() && !p.is_zero();
    let (p, q) = (p.abs(), q.abs());
    let (int, mut rem) = p.div_rem(&q);
    let mut digits = String::new();
    for _ in 0..PLACES {
        if rem.is_zero() {
            break;
        }
        rem *= 10;
        let (d, r) = rem.div_rem(&q);
        digits.push_str(&d.to_string());
        rem = r;
    }
    let digits = digits.trim_end_matches('0');
    let sign = if negative { "-" } else { "" };
    if digits.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{digits}")
    }
}

fn charge_decimal(c: Charge) -> String {
    decimal(&BigInt::from(*c.numer()), &BigInt::from(*c.denom()))
}

/// Comma-separated list, `-` when empty.
pub fn list<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if v.is_empty() {
        "-".into()
    } else {
        v.join(",")
    }
}
