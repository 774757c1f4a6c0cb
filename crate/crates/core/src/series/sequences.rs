//! Coefficient sequences for the relations and the canonical subsets, each
//! available through up to three independent definitions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::{Series, SeriesError};
use crate::patterns::PatternRelation;

/// Generating functions of path sets rather than class counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetTag {
    /// All Lukasiewicz paths.
    L,
    B,
    Bbar,
    C,
    Cbar,
    E,
    Ebar,
    Fset,
}

impl SetTag {
    pub const ALL: [SetTag; 8] = [
        SetTag::L,
        SetTag::B,
        SetTag::Bbar,
        SetTag::C,
        SetTag::Cbar,
        SetTag::E,
        SetTag::Ebar,
        SetTag::Fset,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SetTag::L => "L",
            SetTag::B => "B",
            SetTag::Bbar => "Bbar",
            SetTag::C => "C",
            SetTag::Cbar => "Cbar",
            SetTag::E => "E",
            SetTag::Ebar => "Ebar",
            SetTag::Fset => "Fset",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesTag {
    Relation(PatternRelation),
    Set(SetTag),
}

impl SeriesTag {
    pub fn name(self) -> &'static str {
        match self {
            SeriesTag::Relation(r) => r.name(),
            SeriesTag::Set(s) => s.name(),
        }
    }

    /// Every tag: the 17 relations in table order, then the sets.
    pub fn all() -> Vec<SeriesTag> {
        PatternRelation::ALL
            .into_iter()
            .map(SeriesTag::Relation)
            .chain(SetTag::ALL.into_iter().map(SeriesTag::Set))
            .collect()
    }

    /// Methods that define this tag.
    pub fn methods(self) -> Vec<SeriesMethod> {
        SeriesMethod::ALL
            .into_iter()
            .filter(|&m| match m {
                SeriesMethod::Closed => closed_kind(self).is_some(),
                SeriesMethod::Recurrence => recurrence_kind(self).is_some(),
                SeriesMethod::Fixpoint => system_for(self).is_some(),
            })
            .collect()
    }
}

impl fmt::Display for SeriesTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for SeriesTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl FromStr for SeriesTag {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(r) = s.parse::<PatternRelation>() {
            return Ok(SeriesTag::Relation(r));
        }
        SetTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .map(SeriesTag::Set)
            .ok_or_else(|| SeriesError::UnknownTag(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesMethod {
    Closed,
    Recurrence,
    Fixpoint,
}

impl SeriesMethod {
    pub const ALL: [SeriesMethod; 3] = [
        SeriesMethod::Closed,
        SeriesMethod::Recurrence,
        SeriesMethod::Fixpoint,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesMethod::Closed => "closed",
            SeriesMethod::Recurrence => "recurrence",
            SeriesMethod::Fixpoint => "fixpoint",
        }
    }
}

impl fmt::Display for SeriesMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for SeriesMethod {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl FromStr for SeriesMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SeriesMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

pub fn expand(tag: SeriesTag, method: SeriesMethod, order: usize) -> Result<Series, SeriesError> {
    match method {
        SeriesMethod::Closed => expand_closed(tag, order),
        SeriesMethod::Recurrence => expand_recurrence(tag, order),
        SeriesMethod::Fixpoint => solve_fixpoint(tag, order),
    }
}

// ---------------------------------------------------------------------------
// Closed forms

#[derive(Clone, Copy)]
enum Closed {
    Catalan,
    Motzkin,
    UU,
    UFpair,
    UD,
    DU,
    F,
    D,
    FDpair,
    DD,
    FF,
    UkF,
    UkD,
    DUk,
}

fn closed_kind(tag: SeriesTag) -> Option<Closed> {
    use PatternRelation as R;
    Some(match tag {
        SeriesTag::Relation(r) => match r {
            R::U => return None,
            R::UU => Closed::UU,
            R::UF | R::FU => Closed::UFpair,
            R::UD => Closed::UD,
            R::DU => Closed::DU,
            R::F => Closed::F,
            R::D => Closed::D,
            R::FD | R::DF => Closed::FDpair,
            R::DD => Closed::DD,
            R::Uk => Closed::Motzkin,
            R::FF => Closed::FF,
            R::UkF | R::FUk => Closed::UkF,
            R::UkD => Closed::UkD,
            R::DUk => Closed::DUk,
        },
        SeriesTag::Set(s) => match s {
            SetTag::L => Closed::Catalan,
            SetTag::B => Closed::Motzkin,
            SetTag::C => Closed::UkD,
            SetTag::E => Closed::UkF,
            SetTag::Fset => Closed::FF,
            SetTag::Bbar | SetTag::Cbar | SetTag::Ebar => return None,
        },
    })
}

/// Expands the closed form of `tag` through degree `order`.
///
/// Forms with a `x^m` denominator are evaluated `m` degrees deeper and the
/// division is checked to be exact.
pub fn expand_closed(tag: SeriesTag, order: usize) -> Result<Series, SeriesError> {
    let kind = closed_kind(tag).ok_or(SeriesError::NoClosedForm(tag))?;
    let m = order + 4;
    let p = |c: &[i64]| Series::poly(c, m);
    let s = match kind {
        // (1 - sqrt(1 - 4x)) / (2x)
        Closed::Catalan => (&p(&[1]) - &p(&[1, -4]).sqrt()?).div_x_pow(1)?.div(&p(&[2]))?,
        // (1 - x - sqrt(1 - 2x - 3x^2)) / (2x^2)
        Closed::Motzkin => (&p(&[1, -1]) - &p(&[1, -2, -3]).sqrt()?)
            .div_x_pow(2)?
            .div(&p(&[2]))?,
        // (1 - 2x + x^2 - sqrt((x^2 + 1)(1 - 3x^2))) / (2x(-1 + 2x - x^2 + x^3))
        Closed::UU => {
            let radicand = &p(&[1, 0, 1]) * &p(&[1, 0, -3]);
            (&p(&[1, -2, 1]) - &radicand.sqrt()?)
                .div_x_pow(1)?
                .div(&p(&[-2, 4, -2, 2]))?
        }
        // 2 / (1 - 2x + sqrt(1 - 4x^3))
        Closed::UFpair => p(&[2]).div(&(&p(&[1, -2]) + &p(&[1, 0, 0, -4]).sqrt()?))?,
        // 1 / (1 - x - x^2)
        Closed::UD => p(&[1]).div(&p(&[1, -1, -1]))?,
        // (1 - x^2 - x^3) / (1 - x - x^2)
        Closed::DU => p(&[1, 0, -1, -1]).div(&p(&[1, -1, -1]))?,
        // 1 / (1 - 2x) - x / (1 - x)^2
        Closed::F => &p(&[1]).div(&p(&[1, -2]))? - &p(&[0, 1]).div(&p(&[1, -2, 1]))?,
        // (1 - x) / (1 - 2x)
        Closed::D => p(&[1, -1]).div(&p(&[1, -2]))?,
        // (1 - x^2) / (1 - x - x^2)
        Closed::FDpair => p(&[1, 0, -1]).div(&p(&[1, -1, -1]))?,
        // (1 - x) / (1 - 2x + x^2 - x^3)
        Closed::DD => p(&[1, -1]).div(&p(&[1, -2, 1, -1]))?,
        Closed::FF => {
            let num = p(&[1, -3, 4, -5, 7, -7, 6, -3, 1]);
            let den = &p(&[1, -2, 1, -1]) * &p(&[1, -2, 1]);
            num.div(&den)?
        }
        // (1 - x - sqrt(1 - 2x + x^2 - 4x^3)) / (2x^3)
        Closed::UkF => (&p(&[1, -1]) - &p(&[1, -2, 1, -4]).sqrt()?)
            .div_x_pow(3)?
            .div(&p(&[2]))?,
        Closed::UkD | Closed::DUk => {
            // (a + sqrt(R)) / (1 - 2x - x^3 + (1 - x) sqrt(R)),
            // R = 1 - 2x - x^2 - 2x^3 + x^4
            let root = p(&[1, -2, -1, -2, 1]).sqrt()?;
            let a = match kind {
                Closed::UkD => p(&[1, -1, 1]),
                _ => p(&[1, -1, -1, -2]),
            };
            let den = &p(&[1, -2, 0, -1]) + &(&p(&[1, -1]) * &root);
            (&a + &root).div(&den)?
        }
    };
    Ok(s.truncate(order))
}

// ---------------------------------------------------------------------------
// Recurrences

#[derive(Clone, Copy)]
enum Recurrence {
    CentralBinomial,
    Fibonacci,
    ShiftedFibonacci,
    PowerMinusN,
    HalfPower,
    FibonacciThreeOnes,
    DD,
    Motzkin,
    UkD,
    UkF,
    DUk,
    Catalan,
}

fn recurrence_kind(tag: SeriesTag) -> Option<Recurrence> {
    use PatternRelation as R;
    Some(match tag {
        SeriesTag::Relation(r) => match r {
            R::U => Recurrence::CentralBinomial,
            R::UD => Recurrence::Fibonacci,
            R::DU => Recurrence::ShiftedFibonacci,
            R::F => Recurrence::PowerMinusN,
            R::D => Recurrence::HalfPower,
            R::FD | R::DF => Recurrence::FibonacciThreeOnes,
            R::DD => Recurrence::DD,
            R::Uk => Recurrence::Motzkin,
            R::UkD => Recurrence::UkD,
            R::UkF | R::FUk => Recurrence::UkF,
            R::DUk => Recurrence::DUk,
            R::UU | R::UF | R::FU | R::FF => return None,
        },
        SeriesTag::Set(s) => match s {
            SetTag::L => Recurrence::Catalan,
            SetTag::B => Recurrence::Motzkin,
            SetTag::C => Recurrence::UkD,
            SetTag::E => Recurrence::UkF,
            _ => return None,
        },
    })
}

/// `g(0) = 1`, `g(m + 1) = g(m) + sum_{k=1}^{m-1} g(k) g(m - 1 - k)`.
fn generalized_catalan(len: usize) -> Vec<BigInt> {
    let mut g = vec![BigInt::one()];
    while g.len() < len {
        let m = g.len() - 1;
        let mut next = g[m].clone();
        for k in 1..m {
            next += &g[k] * &g[m - 1 - k];
        }
        g.push(next);
    }
    g
}

/// Builds coefficients `0..=order` from the term rule of `tag`.
pub fn expand_recurrence(tag: SeriesTag, order: usize) -> Result<Series, SeriesError> {
    let kind = recurrence_kind(tag).ok_or(SeriesError::UnsupportedTag {
        tag,
        method: SeriesMethod::Recurrence,
    })?;
    let len = order + 1;
    let int = |v: i64| BigInt::from(v);
    let linear = |init: &[i64], rule: &dyn Fn(&[BigInt]) -> BigInt| {
        let mut a: Vec<BigInt> = init.iter().map(|&v| int(v)).collect();
        while a.len() < len {
            let next = rule(&a);
            a.push(next);
        }
        a.truncate(len);
        a
    };
    let two = int(2);
    let values = match kind {
        Recurrence::CentralBinomial => (0..len)
            .map(|n| binomial(BigInt::from(n), BigInt::from(n / 2)))
            .collect(),
        Recurrence::Fibonacci => linear(&[1, 1], &|a| &a[a.len() - 1] + &a[a.len() - 2]),
        Recurrence::ShiftedFibonacci => {
            linear(&[1, 1, 1, 1], &|a| &a[a.len() - 1] + &a[a.len() - 2])
        }
        Recurrence::PowerMinusN => (0..len).map(|n| two.pow(n as u32) - int(n as i64)).collect(),
        Recurrence::HalfPower => (0..len)
            .map(|n| if n == 0 { int(1) } else { two.pow(n as u32 - 1) })
            .collect(),
        Recurrence::FibonacciThreeOnes => {
            linear(&[1, 1, 1], &|a| &a[a.len() - 1] + &a[a.len() - 2])
        }
        Recurrence::DD => linear(&[1, 1, 1, 2], &|a| {
            let n = a.len();
            &a[n - 1] + &a[n - 2] + &a[n - 4]
        }),
        // (n + 2) M(n) = (2n + 1) M(n - 1) + 3 (n - 1) M(n - 2)
        Recurrence::Motzkin => linear(&[1, 1], &|a| {
            let n = a.len() as i64;
            (int(2 * n + 1) * &a[a.len() - 1] + int(3 * (n - 1)) * &a[a.len() - 2]) / int(n + 2)
        }),
        // The class count at n is the generalized Catalan term n + 1.
        Recurrence::UkD => generalized_catalan(len + 1)[1..].to_vec(),
        // h(0) = 1, h(m + 1) = h(m) + sum_{k=0}^{m-2} h(k) h(m - 2 - k)
        Recurrence::UkF => {
            let mut h = vec![int(1)];
            while h.len() < len {
                let m = h.len() - 1;
                let mut next = h[m].clone();
                for k in 0..m.saturating_sub(1) {
                    next += &h[k] * &h[m - 2 - k];
                }
                h.push(next);
            }
            h
        }
        // u(0) = u(1) = 1, u(n) = UkD count at n - 2.
        Recurrence::DUk => {
            let g = generalized_catalan(len + 1);
            (0..len).map(|n| if n < 2 { int(1) } else { g[n - 1].clone() }).collect()
        }
        Recurrence::Catalan => {
            let mut c = vec![int(1)];
            while c.len() < len {
                let m = c.len();
                let next = (0..m).map(|i| &c[i] * &c[m - 1 - i]).sum();
                c.push(next);
            }
            c
        }
    };
    Ok(Series::from_integers(&values))
}

// ---------------------------------------------------------------------------
// Functional equations

/// A system of functional equations `Y = update(Y)` solved by iteration
/// from the constant series 1. `residual` restates each equation in
/// polynomial (denominator-free) form for an independent check.
struct System {
    components: usize,
    output: usize,
    update: fn(&[Series], usize) -> Result<Vec<Series>, SeriesError>,
    residual: fn(&[Series], usize) -> Vec<Series>,
}

fn p(c: &[i64], order: usize) -> Series {
    Series::poly(c, order)
}

fn system_for(tag: SeriesTag) -> Option<System> {
    use PatternRelation as R;
    let set = match tag {
        SeriesTag::Set(s) => s,
        SeriesTag::Relation(r) => match r {
            R::U => return Some(U_SYSTEM),
            R::UU => return Some(UU_SYSTEM),
            R::UF | R::FU => return Some(UF_SYSTEM),
            R::Uk => SetTag::B,
            R::UkD => SetTag::C,
            R::UkF | R::FUk => SetTag::E,
            R::FF => SetTag::Fset,
            R::DUk => return Some(DUK_SYSTEM),
            _ => return None,
        },
    };
    Some(match set {
        SetTag::L => L_SYSTEM,
        SetTag::B => System { output: 1, ..B_SYSTEM },
        SetTag::Bbar => System { output: 0, ..B_SYSTEM },
        SetTag::C => System { output: 1, ..C_SYSTEM },
        SetTag::Cbar => System { output: 0, ..C_SYSTEM },
        SetTag::E => System { output: 1, ..E_SYSTEM },
        SetTag::Ebar => System { output: 0, ..E_SYSTEM },
        SetTag::Fset => FSET_SYSTEM,
    })
}

/// `L = 1 / (1 - xL)`.
const L_SYSTEM: System = System {
    components: 1,
    output: 0,
    update: |y, _| Ok(vec![y[0].shift(1).geometric()?]),
    residual: |y, n| vec![&(&y[0] - &(&y[0] * &y[0]).shift(1)) - &p(&[1], n)],
};

/// `Bb = 1 / ((1 + x)(1 - x Bb))` and `B = 1 + xB + x^2 Bb B / (1 - x Bb)`.
const B_SYSTEM: System = System {
    components: 2,
    output: 1,
    update: |y, n| {
        let g = y[0].shift(1).geometric()?;
        let bb = g.div(&p(&[1, 1], n))?;
        let b = &(&p(&[1], n) + &y[1].shift(1)) + &(&(&y[0] * &y[1]) * &g).shift(2);
        Ok(vec![bb, b])
    },
    residual: |y, n| {
        let one_minus = &p(&[1], n) - &y[0].shift(1);
        let bb = &(&(&p(&[1, 1], n) * &one_minus) * &y[0]) - &p(&[1], n);
        let b = &(&(&(&p(&[1, -1], n) * &one_minus) * &y[1]) - &(&y[0] * &y[1]).shift(2)) - &one_minus;
        vec![bb, b]
    },
};

/// `Cb = 1 + x^2 Cb / (1 - x Cb)` and `C = 1 + xC + x^2 C / (1 - x Cb)`.
const C_SYSTEM: System = System {
    components: 2,
    output: 1,
    update: |y, n| {
        let g = y[0].shift(1).geometric()?;
        let cb = &p(&[1], n) + &(&y[0] * &g).shift(2);
        let c = &(&p(&[1], n) + &y[1].shift(1)) + &(&y[1] * &g).shift(2);
        Ok(vec![cb, c])
    },
    residual: |y, n| {
        let one_minus = &p(&[1], n) - &y[0].shift(1);
        let cb = &(&(&y[0] * &one_minus) - &one_minus) - &y[0].shift(2);
        let c = &(&(&(&p(&[1, -1], n) * &one_minus) * &y[1]) - &y[1].shift(2)) - &one_minus;
        vec![cb, c]
    },
};

/// `Eb = 1 + x^3 Eb^2 / (1 - x Eb)` and `E = 1 + xE + x^3 E Eb / (1 - x Eb)`.
const E_SYSTEM: System = System {
    components: 2,
    output: 1,
    update: |y, n| {
        let g = y[0].shift(1).geometric()?;
        let eb = &p(&[1], n) + &(&(&y[0] * &y[0]) * &g).shift(3);
        let e = &(&p(&[1], n) + &y[1].shift(1)) + &(&(&y[1] * &y[0]) * &g).shift(3);
        Ok(vec![eb, e])
    },
    residual: |y, n| {
        let one_minus = &p(&[1], n) - &y[0].shift(1);
        let eb = &(&(&y[0] * &one_minus) - &one_minus) - &(&y[0] * &y[0]).shift(3);
        let e = &(&(&(&p(&[1, -1], n) * &one_minus) * &y[1]) - &(&y[1] * &y[0]).shift(3)) - &one_minus;
        vec![eb, e]
    },
};

/// `W = 1 + x^3 W / (1 - x)^2` and
/// `F = 1 / (1 - x) + T^3 x^2 W / (1 - x)` with `T = 1 + x^2 / (1 - x)`.
const FSET_SYSTEM: System = System {
    components: 2,
    output: 1,
    update: |y, n| {
        let w = &p(&[1], n) + &y[0].shift(3).div(&p(&[1, -2, 1], n))?;
        let inv = p(&[1, -1], n).inverse()?;
        let t = &p(&[1], n) + &inv.shift(2);
        let f = &inv + &(&(&t.pow(3) * &inv) * &w).shift(2);
        Ok(vec![w, f])
    },
    residual: |y, n| {
        let sq = p(&[1, -2, 1], n);
        let w = &(&(&y[0] * &sq) - &sq) - &y[0].shift(3);
        let t = p(&[1, -1, 1], n);
        let f = &(&(&y[1] * &sq.pow(2)) - &(&sq * &p(&[1, -1], n))) - &(&t.pow(3) * &y[0]).shift(2);
        vec![w, f]
    },
};

/// `y = 1 / (1 - 2x) - x y^2`.
const U_SYSTEM: System = System {
    components: 1,
    output: 0,
    update: |y, n| Ok(vec![&p(&[1, -2], n).inverse()? - &(&y[0] * &y[0]).shift(1)]),
    residual: |y, n| {
        let lhs = &p(&[1, -2], n) * &(&y[0] + &(&y[0] * &y[0]).shift(1));
        vec![&lhs - &p(&[1], n)]
    },
};

/// `y = (1 + x(-1 + 2x - x^2 + x^3) y^2) / (1 - x)^2`.
const UU_SYSTEM: System = System {
    components: 1,
    output: 0,
    update: |y, n| {
        let num = &p(&[1], n) + &(&p(&[0, -1, 2, -1, 1], n) * &(&y[0] * &y[0]));
        Ok(vec![num.div(&p(&[1, -2, 1], n))?])
    },
    residual: |y, n| {
        let quad = &p(&[0, -1, 2, -1, 1], n) * &(&y[0] * &y[0]);
        vec![&(&(&p(&[1, -2, 1], n) * &y[0]) - &p(&[1], n)) - &quad]
    },
};

/// `y = (1 - x(1 - x - x^2) y^2) / (1 - 2x)`.
const UF_SYSTEM: System = System {
    components: 1,
    output: 0,
    update: |y, n| {
        let num = &p(&[1], n) - &(&p(&[0, 1, -1, -1], n) * &(&y[0] * &y[0]));
        Ok(vec![num.div(&p(&[1, -2], n))?])
    },
    residual: |y, n| {
        let quad = &p(&[0, 1, -1, -1], n) * &(&y[0] * &y[0]);
        vec![&(&(&p(&[1, -2], n) * &y[0]) - &p(&[1], n)) + &quad]
    },
};

/// The `C` system extended with `u = 1 + x + x^2 C`.
const DUK_SYSTEM: System = System {
    components: 3,
    output: 2,
    update: |y, n| {
        let mut next = (C_SYSTEM.update)(&y[..2], n)?;
        let u = &p(&[1, 1], n) + &y[1].shift(2);
        next.push(u);
        Ok(next)
    },
    residual: |y, n| {
        let mut res = (C_SYSTEM.residual)(&y[..2], n);
        res.push(&(&y[2] - &p(&[1, 1], n)) - &y[1].shift(2));
        res
    },
};

fn agreement(a: &[Series], b: &[Series]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            x.coeffs()
                .iter()
                .zip(y.coeffs())
                .position(|(u, v)| u != v)
                .unwrap_or(x.order() + 1)
        })
        .min()
        .unwrap_or(0)
}

fn iterate(tag: SeriesTag, system: &System, order: usize) -> Result<Vec<Series>, SeriesError> {
    // Each round fixes at least one more coefficient, so round k only needs
    // to work through degree k. Full order is reached after `order` rounds.
    let mut state = vec![Series::one(0); system.components];
    let mut agreed = 0;
    for round in 1..=2 * order + 4 {
        let work = order.min(round);
        state = state.iter().map(|s| pad(s, work)).collect();
        let next = (system.update)(&state, work)?;
        if next == state {
            if work == order {
                return Ok(state);
            }
            continue;
        }
        if work == order {
            let now = agreement(&state, &next);
            if now <= agreed && round > order + 1 {
                return Err(SeriesError::NonConvergence { tag, round });
            }
            agreed = now;
        }
        state = next;
    }
    Err(SeriesError::NonConvergence {
        tag,
        round: 2 * order + 4,
    })
}

fn pad(s: &Series, order: usize) -> Series {
    let mut coeffs = s.coeffs().to_vec();
    coeffs.resize(order + 1, BigRational::zero());
    coeffs.truncate(order + 1);
    Series::from_coeffs(coeffs)
}

/// Solves the functional equation of `tag` by iterated substitution.
pub fn solve_fixpoint(tag: SeriesTag, order: usize) -> Result<Series, SeriesError> {
    let system = system_for(tag).ok_or(SeriesError::UnsupportedTag {
        tag,
        method: SeriesMethod::Fixpoint,
    })?;
    let mut state = iterate(tag, &system, order)?;
    Ok(state.swap_remove(system.output))
}

/// Residuals of every equation of the system at its computed solution, in
/// denominator-free form. Each one vanishes through degree `order` when the
/// solution is correct.
pub fn fixpoint_residuals(tag: SeriesTag, order: usize) -> Result<Vec<Series>, SeriesError> {
    let system = system_for(tag).ok_or(SeriesError::UnsupportedTag {
        tag,
        method: SeriesMethod::Fixpoint,
    })?;
    let state = iterate(tag, &system, order)?;
    Ok((system.residual)(&state, order))
}
