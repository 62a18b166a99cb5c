//! Gate tallies and ratios between circuits.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::gates::Gate;

/// Single-qubit gates counted as X-type.
pub const X_TYPE: [Gate; 4] = [Gate::X, Gate::SqrtX, Gate::SqrtXDag, Gate::HYz];
/// Single-qubit gates counted as Z-type.
pub const Z_TYPE: [Gate; 4] = [Gate::Z, Gate::S, Gate::SDag, Gate::HXy];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    XType,
    ZType,
    OtherSingleQubit,
    TwoQubit,
}

impl Category {
    pub fn of(gate: Gate) -> Category {
        if gate.arity() == 2 {
            Category::TwoQubit
        } else if X_TYPE.contains(&gate) {
            Category::XType
        } else if Z_TYPE.contains(&gate) {
            Category::ZType
        } else {
            Category::OtherSingleQubit
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Category::XType => "x_type",
            Category::ZType => "z_type",
            Category::OtherSingleQubit => "other",
            Category::TwoQubit => "two_qubit",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub counts: BTreeMap<String, usize>,
    pub x_type: usize,
    pub z_type: usize,
    /// Single-qubit gates in neither basis (`H`, `Y`, the cyclic gates).
    pub other_single_qubit: usize,
    pub two_qubit: usize,
    pub depth: usize,
    pub total: usize,
}

impl Report {
    pub fn single_qubit_total(&self) -> usize {
        self.x_type + self.z_type + self.other_single_qubit
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// Long format, one row per gate name: `gate,count,category`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["gate", "count", "category"])
            .expect("in-memory");
        for (name, count) in &self.counts {
            let category = Gate::from_name(name)
                .map(|g| Category::of(g).name())
                .unwrap_or("other");
            w.write_record([name.as_str(), &count.to_string(), category])
                .expect("in-memory");
        }
        String::from_utf8(w.into_inner().expect("in-memory")).expect("ASCII")
    }
}

pub fn report(c: &Circuit) -> Report {
    let mut r = Report {
        counts: c.gate_counts(),
        depth: c.depth(),
        ..Report::default()
    };
    for inst in c.instructions() {
        match Category::of(inst.gate()) {
            Category::XType => r.x_type += 1,
            Category::ZType => r.z_type += 1,
            Category::OtherSingleQubit => r.other_single_qubit += 1,
            Category::TwoQubit => r.two_qubit += 1,
        }
        r.total += 1;
    }
    r
}

/// Category-wise ratios `a / b`. A zero denominator leaves the ratio `None`
/// and lists the category in `undefined`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub ratios: BTreeMap<String, Option<f64>>,
    pub undefined: Vec<String>,
}

impl Comparison {
    pub fn ratio(&self, category: &str) -> Option<f64> {
        self.ratios.get(category).copied().flatten()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

pub fn compare(a: &Report, b: &Report) -> Comparison {
    let pairs = [
        ("x_type", a.x_type, b.x_type),
        ("z_type", a.z_type, b.z_type),
        (
            "single_qubit_total",
            a.single_qubit_total(),
            b.single_qubit_total(),
        ),
        ("two_qubit", a.two_qubit, b.two_qubit),
        ("total", a.total, b.total),
    ];
    let mut ratios = BTreeMap::new();
    let mut undefined = Vec::new();
    for (name, num, den) in pairs {
        if den == 0 {
            ratios.insert(name.to_string(), None);
            undefined.push(name.to_string());
        } else {
            ratios.insert(name.to_string(), Some(num as f64 / den as f64));
        }
    }
    Comparison { ratios, undefined }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tallies() {
        let c = Circuit::parse("H 0\nS 1\nTICK\nCX 0 1\nTICK\nSQRT_X 0\nH_YZ 1").unwrap();
        let r = report(&c);
        assert_eq!(r.x_type, 2);
        assert_eq!(r.z_type, 1);
        assert_eq!(r.other_single_qubit, 1);
        assert_eq!(r.two_qubit, 1);
        assert_eq!(r.depth, 3);
        assert_eq!(r.total, 5);
        assert_eq!(r.total, r.counts.values().sum::<usize>());
    }

    #[test]
    fn empty_circuit() {
        let r = report(&Circuit::new(0));
        assert_eq!(r, Report::default());
        assert_eq!(r.to_csv(), "gate,count,category\n");
    }

    #[test]
    fn self_comparison_is_all_ones() {
        let c = Circuit::parse("S 0\nSQRT_X 1\nTICK\nCZ 0 1").unwrap();
        let r = report(&c);
        let cmp = compare(&r, &r);
        assert!(cmp.undefined.is_empty());
        assert!(cmp.ratios.values().all(|v| *v == Some(1.0)));
    }

    #[test]
    fn zero_denominator_flagged() {
        let a = report(&Circuit::parse("SQRT_X 0").unwrap());
        let b = report(&Circuit::parse("S 0").unwrap());
        let cmp = compare(&a, &b);
        assert_eq!(cmp.ratio("x_type"), None);
        assert!(cmp.undefined.contains(&"x_type".to_string()));
        assert_eq!(cmp.ratio("total"), Some(1.0));
    }

    #[test]
    fn csv_rows() {
        let r = report(&Circuit::parse("CX 0 1\nTICK\nS 0").unwrap());
        assert_eq!(
            r.to_csv(),
            "gate,count,category\nCX,1,two_qubit\nS,1,z_type\n"
        );
    }
}
