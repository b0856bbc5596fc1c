//! The shipped table of expected exact values and the named checks run
//! against it. `verify`, `compute` and the test suites all read the same
//! table.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::dirac::gravitational_boundary_density;
use crate::engine::{Check, Engine, TermIndex, VolumeReport};
use crate::error::{Error, Result};
use crate::rational_xi::RationalXi;
use crate::scalar::Scalar;

const TABLE_JSON: &str = include_str!("../data/anchors.json");

/// Supported table format.
pub const TABLE_VERSION: u32 = 1;

/// Every check id, in `verify --all` order.
pub const CHECK_IDS: [&str; 13] = [
    "a1", "a2", "a3", "b", "c", "phi6", "phi5", "res22", "res23", "thm41", "thm42", "eq311",
    "eq319",
];

/// A rational function of `xi_n` written as `numerator / ((xi-i)^a (xi+i)^b)`.
#[derive(Clone, Debug, Deserialize)]
pub struct FunctionAnchor {
    pub numerator: Vec<String>,
    pub upper_order: u32,
    pub lower_order: u32,
}

impl FunctionAnchor {
    pub fn to_rational(&self) -> Result<RationalXi> {
        let num = self
            .numerator
            .iter()
            .map(|c| c.parse::<Scalar>())
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalXi::from_fraction(
            &num,
            self.upper_order,
            self.lower_order,
        ))
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct Anchor {
    pub id: String,
    pub description: String,
    #[serde(default)]
    pub scalars: BTreeMap<String, String>,
    #[serde(default)]
    pub functions: BTreeMap<String, FunctionAnchor>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct AnchorTable {
    pub version: u32,
    pub anchors: Vec<Anchor>,
}

impl AnchorTable {
    pub fn parse(json: &str) -> Result<Self> {
        let table: AnchorTable =
            serde_json::from_str(json).map_err(|e| Error::AnchorTable(e.to_string()))?;
        if table.version != TABLE_VERSION {
            return Err(Error::AnchorTable(format!(
                "version {} (expected {TABLE_VERSION})",
                table.version
            )));
        }
        Ok(table)
    }

    pub fn get(&self, id: &str) -> Result<&Anchor> {
        self.anchors
            .iter()
            .find(|a| a.id == id)
            .ok_or_else(|| Error::UnknownCheck(id.to_string()))
    }

    pub fn scalar(&self, id: &str, key: &str) -> Result<Scalar> {
        self.get(id)?
            .scalars
            .get(key)
            .ok_or_else(|| Error::AnchorTable(format!("{id} has no value `{key}`")))?
            .parse()
    }

    pub fn function(&self, id: &str, key: &str) -> Result<RationalXi> {
        self.get(id)?
            .functions
            .get(key)
            .ok_or_else(|| Error::AnchorTable(format!("{id} has no function `{key}`")))?
            .to_rational()
    }
}

/// The embedded table. Panics only if the shipped file is malformed, which
/// the test suite rules out.
pub fn table() -> &'static AnchorTable {
    static TABLE: OnceLock<AnchorTable> = OnceLock::new();
    TABLE.get_or_init(|| AnchorTable::parse(TABLE_JSON).expect("embedded anchor table"))
}

/// Collects named comparisons into one check.
struct Comparison<'a> {
    engine: &'a Engine,
    id: &'a str,
    expected: Vec<String>,
    got: Vec<String>,
    pass: bool,
}

impl<'a> Comparison<'a> {
    fn new(engine: &'a Engine, id: &'a str) -> Self {
        Self {
            engine,
            id,
            expected: Vec::new(),
            got: Vec::new(),
            pass: true,
        }
    }

    fn scalar(&mut self, key: &str, got: &Scalar) -> Result<()> {
        let expected = table()
            .scalar(self.id, key)?
            .substitute_h1(self.engine.h1());
        self.push(key, expected.to_string(), got.to_string(), &expected == got);
        Ok(())
    }

    fn function(&mut self, key: &str, got: &RationalXi) -> Result<()> {
        let h1 = self.engine.h1().clone();
        let expected = table()
            .function(self.id, key)?
            .map_coefficients(|c| c.substitute_h1(&h1));
        self.push(key, expected.to_string(), got.to_string(), &expected == got);
        Ok(())
    }

    fn push(&mut self, key: &str, expected: String, got: String, pass: bool) {
        self.expected.push(format!("{key} = {expected}"));
        self.got.push(format!("{key} = {got}"));
        self.pass &= pass;
    }

    fn finish(self) -> Check {
        Check {
            name: self.id.to_string(),
            expected: self.expected.join("; "),
            got: self.got.join("; "),
            pass: self.pass,
        }
    }
}

fn case_check(engine: &Engine, id: &str, t: TermIndex, shapes: &[&str]) -> Result<Check> {
    let m = engine.metric(6)?;
    let mut cmp = Comparison::new(engine, id);
    cmp.scalar("density", &engine.evaluate_term(&m, &t)?.density)?;
    let left = engine.left_factor(&m, &t)?.scalar_part();
    for shape in shapes {
        match *shape {
            "left_factor" => cmp.function(shape, &left)?,
            "left_factor_dxi" => cmp.function(shape, &left.dxi())?,
            _ => unreachable!("shape names are fixed here"),
        }
    }
    Ok(cmp.finish())
}

/// Recomputes one named quantity and compares it with the table.
pub fn run_check(engine: &Engine, id: &str) -> Result<Check> {
    match id {
        "a1" => case_check(engine, id, TermIndex::new(-2, -2, 0, 0, 1), &[]),
        "a2" => case_check(
            engine,
            id,
            TermIndex::new(-2, -2, 0, 1, 0),
            &["left_factor"],
        ),
        "a3" => case_check(
            engine,
            id,
            TermIndex::new(-2, -2, 1, 0, 0),
            &["left_factor", "left_factor_dxi"],
        ),
        "b" => case_check(
            engine,
            id,
            TermIndex::new(-2, -3, 0, 0, 0),
            &["left_factor", "left_factor_dxi"],
        ),
        "c" => case_check(engine, id, TermIndex::new(-3, -2, 0, 0, 0), &[]),
        "phi6" => {
            let mut cmp = Comparison::new(engine, id);
            let report = engine.compute_phi_unchecked(6, 2, 2)?;
            cmp.scalar("boundary_density", &report.boundary_density)?;
            Ok(cmp.finish())
        }
        "phi5" => {
            let mut cmp = Comparison::new(engine, id);
            let report = engine.compute_phi_unchecked(5, 2, 2)?;
            cmp.scalar("boundary_density", &report.boundary_density)?;
            let m = engine.metric(5)?;
            let left = engine.left_factor(&m, &TermIndex::new(-2, -2, 0, 0, 0))?;
            cmp.function("left_factor", &left.scalar_part())?;
            Ok(cmp.finish())
        }
        "res22" | "res23" => {
            let m = engine.metric(6)?;
            let got = if id == "res22" {
                engine.compute_res22(&m)?
            } else {
                engine.compute_res23(&m)?
            };
            let mut cmp = Comparison::new(engine, id);
            cmp.scalar("density", &got)?;
            Ok(cmp.finish())
        }
        "thm41" | "thm42" => {
            let n = if id == "thm41" { 6 } else { 5 };
            let mut cmp = Comparison::new(engine, id);
            cmp.scalar(
                "gravity_density",
                &gravitational_boundary_density(&engine.metric(n)?),
            )?;
            for p in engine.gravity_proportionality(n)? {
                cmp.push(
                    &format!("{} ratio", p.name),
                    p.stated.to_string(),
                    p.computed.to_string(),
                    p.pass,
                );
            }
            Ok(cmp.finish())
        }
        "eq311" => {
            // The integrand is rebuilt from the engine at h1 = 1 and
            // normalised to the displayed form.
            let unit = engine.clone().with_h1(Scalar::one());
            let m = unit.metric(6)?;
            let t = TermIndex::new(-2, -2, 0, 1, 0);
            let left = unit
                .left_factor(&m, &t)?
                .scalar_part()
                .scale(&Scalar::integer(4));
            let right = unit
                .right_factor(&m, &t)?
                .scalar_part()
                .scale(&Scalar::ratio(1, 2));
            let integral = left.mul(&right).integrate_line()?;
            let mut cmp = Comparison::new(engine, id);
            cmp.scalar("integral", &integral)?;
            Ok(cmp.finish())
        }
        "eq319" => {
            let m = engine.metric(6)?;
            let re = engine.rearrangement_identity(&m)?;
            let via = engine.evaluate_case_c_via_flip(&m)?;
            let direct = engine.evaluate_term(&m, &TermIndex::new(-3, -2, 0, 0, 0))?;
            let mut cmp = Comparison::new(engine, id);
            cmp.push(
                "rearrangement",
                "holds".to_string(),
                if re.holds() { "holds" } else { "fails" }.to_string(),
                re.holds(),
            );
            cmp.scalar("correction", &engine.case_c_correction(&m)?)?;
            cmp.scalar("case_c", &via.density)?;
            cmp.push(
                "direct case_c",
                via.density.to_string(),
                direct.density.to_string(),
                via.density == direct.density,
            );
            Ok(cmp.finish())
        }
        other => Err(Error::UnknownCheck(other.to_string())),
    }
}

/// Runs every check in [`CHECK_IDS`] order.
pub fn run_all(engine: &Engine) -> Result<Vec<Check>> {
    CHECK_IDS.iter().map(|id| run_check(engine, id)).collect()
}

/// The checks that concern the configuration of `report`.
pub fn report_checks(engine: &Engine, report: &VolumeReport) -> Result<Vec<Check>> {
    let ids: &[&str] = match (report.dim, report.p1, report.p2) {
        (6, 2, 2) => &["a1", "a2", "a3", "b", "c", "phi6", "eq319"],
        (5, 2, 2) => &["phi5", "thm42"],
        _ => &[],
    };
    ids.iter().map(|id| run_check(engine, id)).collect()
}

/// Cited literature constants. None of them is computed here.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CitedConstant {
    pub quantity: String,
    pub value: String,
    pub source: String,
    pub cited: bool,
}

pub fn cited_constants() -> Vec<CitedConstant> {
    let row = |quantity: &str, value: &str, source: &str| CitedConstant {
        quantity: quantity.to_string(),
        value: value.to_string(),
        source: source.to_string(),
        cited: true,
    };
    vec![
        row(
            "Vol^(p1,p2)_n for p1 + p2 = n",
            r"c_0{\rm Vol}_M",
            "Wodzicki residue of D^-n on a closed manifold",
        ),
        row(
            "Vol^(1,1)_4",
            r"-\frac{\Omega_4}{3}\int_Ms{\rm dvol}_M",
            "Kastler-Kalau-Walze theorem",
        ),
        row(
            "Vol^(1,1)_3",
            r"c_1{\rm Vol}_{\partial M}",
            "boundary term, constant not evaluated",
        ),
        row(
            "Vol^(2,2)_6 interior term",
            r"-\frac{5\Omega_6}{3}\int_Ms{\rm dvol}_M",
            "Kastler, Kalau-Walze and Ponge",
        ),
    ]
}
