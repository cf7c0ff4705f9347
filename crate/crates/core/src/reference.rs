//! Printed closed forms for the classical higher-rank spaces and the printed
//! exceptional values, kept apart from the enumeration so that each can be
//! checked against the other.

use serde::Serialize;

use crate::catalog::{instantiate, CatalogError, SpaceClass, SpaceInstance, SpaceKey, EXCEPTIONAL_TABLE};
use crate::Rational;

/// Printed `d_P`, `k_P`, `C_P` and the constant `X` in `sharp = X − 2·codim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Printed {
    pub dp: i64,
    pub kp: i64,
    #[serde(serialize_with = "crate::catalog::ser_rational")]
    pub cp: Rational,
    pub sharp0: i64,
}

#[derive(Clone, Copy, Debug)]
pub struct ClassicalRow {
    pub symbol: &'static str,
    pub quotient: &'static str,
    pub condition: &'static str,
    /// The printed `d_P`, `k_P`, `C_P`, `sharp` formulas.
    pub text: [&'static str; 4],
    pub class: SpaceClass,
    /// Parameters of the family with every parameter at most `bound`.
    members: fn(u32) -> Vec<[u32; 2]>,
    formula: fn([u32; 2]) -> Printed,
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn p(dp: i64, kp: i64, cp: Rational, sharp0: i64) -> Printed {
    Printed { dp, kp, cp, sharp0 }
}

fn from2(b: u32) -> Vec<[u32; 2]> {
    (2..=b).map(|n| [n, 0]).collect()
}

fn from4(b: u32) -> Vec<[u32; 2]> {
    (4..=b).map(|n| [n, 0]).collect()
}

fn from8(b: u32) -> Vec<[u32; 2]> {
    (8..=b).map(|n| [n, 0]).collect()
}

impl ClassicalRow {
    pub fn members(&self, bound: u32) -> Vec<[u32; 2]> {
        (self.members)(bound)
    }

    pub fn printed(&self, params: [u32; 2]) -> Printed {
        (self.formula)(params)
    }

    /// The catalog presentation of the row member with the given parameters.
    pub fn key(&self, params: [u32; 2]) -> SpaceKey {
        let [a, b] = params;
        let args: Vec<u32> = match self.class {
            SpaceClass::SU | SpaceClass::AI | SpaceClass::AII | SpaceClass::Sp | SpaceClass::CI | SpaceClass::DIII => {
                vec![a]
            }
            SpaceClass::Spin if self.symbol == "BD" && self.quotient.contains("2n+1") => vec![2 * a + 1],
            SpaceClass::Spin => vec![2 * a],
            _ => vec![a, b],
        };
        SpaceKey::new(self.class, &args)
    }

    pub fn instance(&self, params: [u32; 2]) -> Result<SpaceInstance, CatalogError> {
        let key = self.key(params);
        instantiate(key.class, key.args())
    }
}

pub const CLASSICAL_ROWS: [ClassicalRow; 23] = {
    use SpaceClass as S;
    [
        ClassicalRow {
            symbol: "A",
            quotient: "SU(n)",
            condition: "3 <= n",
            text: ["2(n-1)", "(n-1)^2", "n-5", "2n-2codim"],
            class: S::SU,
            members: |b| (3..=b).map(|n| [n, 0]).collect(),
            formula: |[n, _]| {
                let n = n as i64;
                p(2 * (n - 1), (n - 1) * (n - 1), r(n - 5, 1), 2 * n)
            },
        },
        ClassicalRow {
            symbol: "AI",
            quotient: "SU(n)/SO(n)",
            condition: "2 <= n",
            text: ["n-1", "n(n-1)/2", "(n-9)/2", "n+1-2codim"],
            class: S::AI,
            members: from2,
            formula: |[n, _]| {
                let n = n as i64;
                p(n - 1, n * (n - 1) / 2, r(n - 9, 2), n + 1)
            },
        },
        ClassicalRow {
            symbol: "AII",
            quotient: "SU(2n)/Sp(n)",
            condition: "2 <= n",
            text: ["4(n-1)", "(2n-3)(n-1)", "2n-6", "4n-2-2codim"],
            class: S::AII,
            members: from2,
            formula: |[n, _]| {
                let n = n as i64;
                p(4 * (n - 1), (2 * n - 3) * (n - 1), r(2 * n - 6, 1), 4 * n - 2)
            },
        },
        ClassicalRow {
            symbol: "AIII",
            quotient: "SU(4)/S(U(2)U(2))",
            condition: "",
            text: ["4", "4", "-2", "6-2codim"],
            class: S::AIII,
            members: |_| vec![[2, 2]],
            formula: |_| p(4, 4, r(-2, 1), 6),
        },
        ClassicalRow {
            symbol: "AIII",
            quotient: "SU(5)/S(U(2)U(3))",
            condition: "",
            text: ["7", "5", "-1/2", "9-2codim"],
            class: S::AIII,
            members: |_| vec![[2, 3]],
            formula: |_| p(7, 5, r(-1, 2), 9),
        },
        ClassicalRow {
            symbol: "AIII",
            quotient: "SU(2+q)/S(U(2)U(q))",
            condition: "4 <= q",
            text: ["2q+1", "2q-1", "q-7/2", "2q+3-2codim"],
            class: S::AIII,
            members: |b| (4..=b).map(|q| [2, q]).collect(),
            formula: |[_, q]| {
                let q = q as i64;
                p(2 * q + 1, 2 * q - 1, r(2 * q - 7, 2), 2 * q + 3)
            },
        },
        ClassicalRow {
            symbol: "AIII",
            quotient: "SU(p+q)/S(U(p)U(q))",
            condition: "3 <= p <= q",
            text: ["2(p+q)-3", "2pq-2(p+q)+3", "p+q-11/2", "2(p+q)-1-2codim"],
            class: S::AIII,
            members: |b| (3..=b).flat_map(|p| (p..=b).map(move |q| [p, q])).collect(),
            formula: |[p_, q]| {
                let (a, b) = (p_ as i64, q as i64);
                p(2 * (a + b) - 3, 2 * a * b - 2 * (a + b) + 3, r(2 * (a + b) - 11, 2), 2 * (a + b) - 1)
            },
        },
        ClassicalRow {
            symbol: "BD",
            quotient: "Spin(2n+1)",
            condition: "2 <= n",
            text: ["4n-2", "n(2n-3)+2", "2n-5", "4n-2codim"],
            class: S::Spin,
            members: from2,
            formula: |[n, _]| {
                let n = n as i64;
                p(4 * n - 2, n * (2 * n - 3) + 2, r(2 * n - 5, 1), 4 * n)
            },
        },
        ClassicalRow {
            symbol: "BD",
            quotient: "Spin(2n)",
            condition: "4 <= n",
            text: ["4n-4", "n(2n-5)+4", "2n-6", "4n-2-2codim"],
            class: S::Spin,
            members: from4,
            formula: |[n, _]| {
                let n = n as i64;
                p(4 * n - 4, n * (2 * n - 5) + 4, r(2 * n - 6, 1), 4 * n - 2)
            },
        },
        ClassicalRow {
            symbol: "BDI",
            quotient: "SO(2+q)/SO(2)SO(q)",
            condition: "3 <= q",
            text: ["q", "q", "q/2-4", "q+2-2codim"],
            class: S::BDI,
            members: |b| (3..=b).map(|q| [2, q]).collect(),
            formula: |[_, q]| {
                let q = q as i64;
                p(q, q, r(q - 8, 2), q + 2)
            },
        },
        ClassicalRow {
            symbol: "BDI",
            quotient: "SO(6)/SO(3)SO(3)",
            condition: "",
            text: ["3", "6", "-5/2", "5-2codim"],
            class: S::BDI,
            members: |_| vec![[3, 3]],
            formula: |_| p(3, 6, r(-5, 2), 5),
        },
        ClassicalRow {
            symbol: "BDI",
            quotient: "SO(3+q)/SO(3)SO(q)",
            condition: "4 <= q",
            text: ["q+1", "2q-1", "(q-7)/2", "q+3-2codim"],
            class: S::BDI,
            members: |b| (4..=b).map(|q| [3, q]).collect(),
            formula: |[_, q]| {
                let q = q as i64;
                p(q + 1, 2 * q - 1, r(q - 7, 2), q + 3)
            },
        },
        ClassicalRow {
            symbol: "BDI",
            quotient: "SO(p+q)/SO(p)SO(q)",
            condition: "4 <= p <= q",
            text: ["p+q-2", "pq-p-q+2", "(p+q-10)/2", "p+q-2codim"],
            class: S::BDI,
            members: |b| (4..=b).flat_map(|p| (p..=b).map(move |q| [p, q])).collect(),
            formula: |[p_, q]| {
                let (a, b) = (p_ as i64, q as i64);
                p(a + b - 2, a * b - a - b + 2, r(a + b - 10, 2), a + b)
            },
        },
        ClassicalRow {
            symbol: "C",
            quotient: "Sp(n)",
            condition: "2 <= n",
            text: ["4n-2", "n(2n-3)+2", "2n-5", "4n-2codim"],
            class: S::Sp,
            members: from2,
            formula: |[n, _]| {
                let n = n as i64;
                p(4 * n - 2, n * (2 * n - 3) + 2, r(2 * n - 5, 1), 4 * n)
            },
        },
        ClassicalRow {
            symbol: "CI",
            quotient: "Sp(n)/U(n)",
            condition: "2 <= n",
            text: ["2n-1", "n(n-1)+1", "n-9/2", "2n+1-2codim"],
            class: S::CI,
            members: from2,
            formula: |[n, _]| {
                let n = n as i64;
                p(2 * n - 1, n * (n - 1) + 1, r(2 * n - 9, 2), 2 * n + 1)
            },
        },
        ClassicalRow {
            symbol: "CII",
            quotient: "Sp(4)/Sp(2)Sp(2)",
            condition: "",
            text: ["10", "6", "1", "12-2codim"],
            class: S::CII,
            members: |_| vec![[2, 2]],
            formula: |_| p(10, 6, r(1, 1), 12),
        },
        ClassicalRow {
            symbol: "CII",
            quotient: "Sp(2+q)/Sp(2)Sp(q)",
            condition: "3 <= q",
            text: ["4q+3", "4q-3", "2q-5/2", "4q+5-2codim"],
            class: S::CII,
            members: |b| (3..=b).map(|q| [2, q]).collect(),
            formula: |[_, q]| {
                let q = q as i64;
                p(4 * q + 3, 4 * q - 3, r(4 * q - 5, 2), 4 * q + 5)
            },
        },
        ClassicalRow {
            symbol: "CII",
            quotient: "Sp(p+q)/Sp(p)Sp(q)",
            condition: "3 <= p <= q",
            text: ["4(p+q)-5", "4pq-4p-4q+5", "2(p+q)-13/2", "4(p+q)-3-2codim"],
            class: S::CII,
            members: |b| (3..=b).flat_map(|p| (p..=b).map(move |q| [p, q])).collect(),
            formula: |[p_, q]| {
                let (a, b) = (p_ as i64, q as i64);
                p(4 * (a + b) - 5, 4 * a * b - 4 * a - 4 * b + 5, r(4 * (a + b) - 13, 2), 4 * (a + b) - 3)
            },
        },
        ClassicalRow {
            symbol: "DIII",
            quotient: "SO(8)/U(4)",
            condition: "",
            text: ["6", "6", "-1", "8-2codim"],
            class: S::DIII,
            members: |_| vec![[4, 0]],
            formula: |_| p(6, 6, r(-1, 1), 8),
        },
        ClassicalRow {
            symbol: "DIII",
            quotient: "SO(10)/U(5)",
            condition: "",
            text: ["13", "7", "5/2", "15-2codim"],
            class: S::DIII,
            members: |_| vec![[5, 0]],
            formula: |_| p(13, 7, r(5, 2), 15),
        },
        ClassicalRow {
            symbol: "DIII",
            quotient: "SO(12)/U(6)",
            condition: "",
            text: ["15", "15", "7/2", "17-2codim"],
            class: S::DIII,
            members: |_| vec![[6, 0]],
            formula: |_| p(15, 15, r(7, 2), 17),
        },
        ClassicalRow {
            symbol: "DIII",
            quotient: "SO(14)/U(7)",
            condition: "",
            text: ["21", "21", "13/2", "23-2codim"],
            class: S::DIII,
            members: |_| vec![[7, 0]],
            formula: |_| p(21, 21, r(13, 2), 23),
        },
        ClassicalRow {
            symbol: "DIII",
            quotient: "SO(2n)/U(n)",
            condition: "8 <= n",
            text: ["4n-7", "n(n-5)+7", "2n-15/2", "4n-5-2codim"],
            class: S::DIII,
            members: from8,
            formula: |[n, _]| {
                let n = n as i64;
                p(4 * n - 7, n * (n - 5) + 7, r(4 * n - 15, 2), 4 * n - 5)
            },
        },
    ]
};

/// Printed values of an exceptional space: dim, d_P, k_P.
pub fn exceptional_printed(class: SpaceClass) -> Option<(u32, u32, u32)> {
    EXCEPTIONAL_TABLE.iter().find(|row| row.0 == class).map(|&(_, _, _, dim, dp, kp)| (dim, dp, kp))
}

/// One disagreement between a printed and a computed value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub row: String,
    pub column: &'static str,
    pub printed: String,
    pub computed: String,
}

/// Computed values of a catalog instance in the printed layout.
pub fn computed(s: &SpaceInstance) -> Printed {
    Printed { dp: s.dp as i64, kp: s.kp as i64, cp: s.cp, sharp0: s.sharp(0) }
}

fn compare(row: String, printed: Printed, got: Printed, out: &mut Vec<Mismatch>) {
    let cols: [(&'static str, String, String); 4] = [
        ("d_P", printed.dp.to_string(), got.dp.to_string()),
        ("k_P", printed.kp.to_string(), got.kp.to_string()),
        ("C_P", printed.cp.to_string(), got.cp.to_string()),
        ("sharp", printed.sharp0.to_string(), got.sharp0.to_string()),
    ];
    for (column, p, c) in cols {
        if p != c {
            out.push(Mismatch { row: row.clone(), column, printed: p, computed: c });
        }
    }
}

/// Every classical row member with parameters up to `bound` and every
/// exceptional row, compared against the catalog.
pub fn check_tables(bound: u32) -> Result<Vec<Mismatch>, CatalogError> {
    let mut out = Vec::new();
    for row in &CLASSICAL_ROWS {
        for params in row.members(bound) {
            let s = row.instance(params)?;
            compare(format!("{} {}", row.quotient, s.key), row.printed(params), computed(&s), &mut out);
        }
    }
    for &(class, ..) in &EXCEPTIONAL_TABLE {
        let s = instantiate(class, &[])?;
        let (dim, dp, kp) = exceptional_printed(class).expect("tabulated");
        let printed =
            Printed { dp: dp as i64, kp: kp as i64, cp: Rational::new(dp as i64, 2) - 4, sharp0: 2 + dp as i64 };
        compare(class.name().to_string(), printed, computed(&s), &mut out);
        if s.dim != dim {
            out.push(Mismatch {
                row: class.name().into(),
                column: "dim",
                printed: dim.to_string(),
                computed: s.dim.to_string(),
            });
        }
    }
    Ok(out)
}
