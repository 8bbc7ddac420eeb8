use confdirac::coulomb::{dirac_coulomb_energy, schrodinger_energy};
use confdirac::exact_ansatz::{build_ansatz, norm_by_quadrature, nu_fine_tuned, radial_residual};
use confdirac::fw_effective::{
    antiparticle_coulomb_shift, antiparticle_spectrum_airy, first_order_shift, preservation_scan, shift_table,
};
use confdirac::quantum_numbers::{decompose_kappa, enumerate_kappa};
use confdirac::radial::{
    find_state_near, radial_fn, schrodinger_state_near, suggest_dirac_grid, suggest_schrodinger_grid,
    PotentialSpec, RadialFn,
};
use confdirac::rescale::bag_model_case;
use confdirac::Grid;

use crate::table::{Cell, Table};
use crate::{AnsatzArgs, Common, EnergyArgs, Failure, Family, GridArgs, ScanArgs, ShiftArgs, SolveArgs};

/// One flag set per reference scenario, printed by `--seed-defaults`.
pub const SEED_DEFAULTS: &[&str] = &[
    "energy --lambda 0.5 --n 1 --kappa -1 --mass 1 --format csv",
    "energy --lambda 0 --n 3 --kappa -1 --mass 1 --format csv",
    "energy --lambda 0.5 --n 2 --kappa -1 --mass 1 --format csv",
    "shift --lambda 0.1 --mu 0.0001 --kappa0 -1 --n-max 3 --mass 1 --format csv",
    "scan --n-max 50 --N-max 10 --format csv",
    "solve --family coulomb --lambda 0.5 --kappa -1 --n 1 --states 3 --mass 1 --points 20000 --spacing log --format csv",
    "solve --family coulomb-linear --lambda 0.5 --mu 0.001 --kappa0 -1 --kappa -1 --n 1 --states 1 --mass 1 --points 20000 --spacing log --format csv",
    "solve --family antiparticle-linear --mu 0.5 --states 3 --mass 1 --points 20000 --spacing log --format csv",
    "solve --family bag --lambda 0.5 --kappa0 -1 --A 1 --r0 10 --M 20 --mass 1 --points 20000 --spacing log --format csv",
    "ansatz --lambda 0.5 --mu 0.0001 --kappa0 -1 --detune 0 --points 20000 --mass 1 --format csv",
    "ansatz --lambda 0.5 --mu 0.0001 --kappa0 -1 --detune 0.001 --points 20000 --mass 1 --format csv",
    "ansatz --lambda 0.5 --mu 0 --kappa0 -1 --detune 0 --points 20000 --mass 1 --format csv",
];

pub struct Outcome {
    pub table: Table,
    /// Set when a check failed after the table was computed; the table is
    /// still written before the process exits with the matching code.
    pub status: Option<Failure>,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Self { table, status: None }
    }
}

fn domain(msg: impl Into<String>) -> Failure {
    Failure::Domain(msg.into())
}

pub fn energy(args: &EnergyArgs, common: &Common) -> Result<Outcome, Failure> {
    let m = common.mass;
    let states: Vec<(u32, i32)> = match (args.n, args.kappa) {
        (Some(n), kappa) => vec![(n, kappa.unwrap_or(-(n as i32)))],
        (None, Some(_)) => return Err(domain("--kappa needs --n")),
        (None, None) => {
            let mut v = Vec::new();
            for n in 1..=args.n_max {
                for k in enumerate_kappa(n)? {
                    v.push((n, k));
                }
            }
            v
        }
    };
    let mut t = Table::new(&["n", "kappa", "E_dirac", "E_schrodinger", "E_preserved"]);
    for (n, kappa) in states {
        let e = dirac_coulomb_energy(n, kappa, args.lambda, m)?;
        let preserved = (kappa == -(n as i32)).then_some(e);
        t.push(vec![
            n.into(),
            kappa.into(),
            e.into(),
            schrodinger_energy(n, args.lambda, m).into(),
            preserved.into(),
        ]);
    }
    Ok(t.into())
}

pub fn shift(args: &ShiftArgs, common: &Common) -> Result<Outcome, Failure> {
    let m = common.mass;
    let rows = shift_table(args.n_max, args.kappa0, args.lambda, args.mu, m)?;
    let mut t = Table::new(&[
        "n",
        "kappa",
        "bracket",
        "total",
        "term_linear",
        "term_spin_orbit",
        "term_kinetic",
        "coefficient",
        "preserved",
    ]);
    let unit = args.mu * args.lambda / m;
    for (n, kappa, s) in rows {
        let coefficient = (unit != 0.0).then(|| s.total / unit);
        t.push(vec![
            n.into(),
            kappa.into(),
            s.bracket.to_string().into(),
            s.total.into(),
            s.term_linear.into(),
            s.term_spin_orbit.into(),
            s.term_kinetic.into(),
            coefficient.into(),
            (*s.bracket.numer() == 0).into(),
        ]);
    }
    Ok(t.into())
}

pub fn scan(args: &ScanArgs) -> Result<Outcome, Failure> {
    let report = preservation_scan(args.n_max, args.big_n_max)?;
    let mut t = Table::new(&["n", "kappa", "N", "physical"]);
    for s in &report.solutions {
        t.push(vec![s.n.into(), s.kappa.into(), s.big_n.into(), s.physical.into()]);
    }
    let status = (!report.confirms_uniqueness()).then(|| {
        Failure::Claim(format!(
            "scan to n = {}, N = {} found solutions outside κ = ±n, N = 1 (sign opposition: {})",
            args.n_max, args.big_n_max, report.sign_opposition_holds
        ))
    });
    Ok(Outcome { table: t, status })
}

fn grid_for(
    g: &GridArgs,
    suggest: impl Fn(Option<f64>) -> confdirac::Result<Grid>,
) -> Result<Grid, Failure> {
    match (g.r_min, g.r_max) {
        (Some(lo), Some(hi)) => Ok(Grid::new(lo, hi, g.points, g.spacing)?),
        (lo, None) => Ok(suggest(lo)?),
        (lo, Some(hi)) => {
            let s = suggest(lo)?;
            Ok(Grid::new(s.r_min(), hi, g.points, g.spacing)?)
        }
    }
}

const SOLVE_COLUMNS: &[&str] = &[
    "family",
    "n",
    "kappa",
    "nodes",
    "energy",
    "reference",
    "reference_kind",
    "difference",
    "residual",
];

struct Solved {
    n: u32,
    kappa: i32,
    nodes: usize,
    energy: f64,
    reference: Option<f64>,
    kind: &'static str,
    residual: f64,
    dump: Table,
}

fn dirac_dump(radii: &[f64], f: &[f64], g: &[f64]) -> Table {
    let mut t = Table::new(&["r", "f", "g"]);
    for i in 0..radii.len() {
        t.push(vec![radii[i].into(), f[i].into(), g[i].into()]);
    }
    t
}

pub fn solve(args: &SolveArgs, common: &Common) -> Result<Outcome, Failure> {
    if args.states == 0 {
        return Err(domain("--states must be at least 1"));
    }
    let solved = match args.family {
        Family::AntiparticleLinear => solve_antiparticle(args, common)?,
        Family::Bag => solve_bag(args, common)?,
        Family::Coulomb | Family::CoulombLinear => solve_dirac(args, common)?,
    };
    let mut t = Table::new(SOLVE_COLUMNS);
    for s in &solved {
        t.push(vec![
            args.family.name().into(),
            s.n.into(),
            s.kappa.into(),
            s.nodes.into(),
            s.energy.into(),
            s.reference.into(),
            s.kind.into(),
            s.reference.map(|r| s.energy - r).into(),
            s.residual.into(),
        ]);
    }
    if let (Some(path), Some(last)) = (&args.dump_wavefunction, solved.last()) {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        last.dump.write(common.format, &mut w)?;
        std::io::Write::flush(&mut w)?;
    }
    let worst = solved.iter().map(|s| s.residual).fold(0.0, f64::max);
    let status = (!(worst <= args.max_residual)).then(|| {
        Failure::Numeric(format!(
            "residual {worst:e} exceeds --max-residual {:e}; refine the grid",
            args.max_residual
        ))
    });
    Ok(Outcome { table: t, status })
}

fn solve_dirac(args: &SolveArgs, common: &Common) -> Result<Vec<Solved>, Failure> {
    let m = common.mass;
    let lambda = args.lambda.unwrap_or(0.5);
    let kappa = args.kappa.unwrap_or(args.kappa0);
    let (ell, _) = decompose_kappa(kappa)?;
    let n0 = args.n.unwrap_or(ell + 1);
    let linear = args.family == Family::CoulombLinear;
    let nu = match (linear, args.nu) {
        (false, _) => 0.0,
        (true, Some(nu)) => nu,
        (true, None) => nu_fine_tuned(args.mu, lambda, args.kappa0)?,
    };
    let pot = if linear {
        PotentialSpec::coulomb_linear(lambda, args.mu, nu)
    } else {
        PotentialSpec::coulomb(lambda)
    };
    let mut out = Vec::new();
    for n in n0..n0 + args.states {
        let e0 = dirac_coulomb_energy(n, kappa, lambda, m)?;
        let (reference, kind) = if !linear {
            (e0, "sommerfeld")
        } else if n as i32 == -args.kappa0 && kappa == args.kappa0 && args.nu.is_none() {
            (e0, "preserved")
        } else {
            let shift = first_order_shift(n, kappa, args.kappa0, lambda, args.mu, m)?;
            (e0 + shift.total, "first-order")
        };
        let grid = grid_for(&args.grid, |r_min| {
            suggest_dirac_grid(&pot, kappa, m, reference, args.grid.points, args.grid.spacing, r_min)
        })?;
        let half_width = lambda * lambda * m / (4.0 * f64::from(n + 1).powi(3));
        let target = (n - ell - 1) as usize;
        let s = find_state_near(&pot, kappa, m, &grid, reference, half_width, target)?;
        out.push(Solved {
            n,
            kappa,
            nodes: s.nodes_f,
            energy: s.energy,
            reference: Some(reference),
            kind,
            residual: s.residual,
            dump: dirac_dump(&s.radii, &s.f, &s.g),
        });
    }
    Ok(out)
}

fn solve_bag(args: &SolveArgs, common: &Common) -> Result<Vec<Solved>, Failure> {
    let m = common.mass;
    let lambda = args.lambda.unwrap_or(0.5);
    let kappa0 = args.kappa0;
    let kappa = args.kappa.unwrap_or(kappa0);
    let n = args.n.unwrap_or(kappa0.unsigned_abs());
    if kappa != kappa0 || n != kappa0.unsigned_abs() || args.states != 1 {
        return Err(domain(
            "the bag family is solved for its preserved level only (n = −κ₀, κ = κ₀, one state)",
        ));
    }
    if !(args.a_coef > 0.0) {
        return Err(domain(format!(
            "A must be positive for a normalizable rescaled state, got {}",
            args.a_coef
        )));
    }
    let r0 = args.r0.unwrap_or(5.0 / (lambda * m));
    if !(r0 > 0.0) {
        return Err(domain("--r0 must be positive"));
    }
    let case = bag_model_case(args.a_coef, r0, args.power, lambda, kappa0, m)?;
    let grid = grid_for(&args.grid, |r_min| {
        suggest_dirac_grid(&case.potential, kappa, m, case.energy, args.grid.points, args.grid.spacing, r_min)
    })?;
    let s = find_state_near(&case.potential, kappa, m, &grid, case.energy, lambda * lambda * m / 32.0, 0)?;
    Ok(vec![Solved {
        n,
        kappa,
        nodes: s.nodes_f,
        energy: s.energy,
        reference: Some(case.energy),
        kind: "preserved",
        residual: case.residual,
        dump: dirac_dump(case.grid.nodes(), &case.f, &case.g),
    }])
}

fn solve_antiparticle(args: &SolveArgs, common: &Common) -> Result<Vec<Solved>, Failure> {
    let m = common.mass;
    let mu = args.mu;
    let airy = antiparticle_spectrum_airy(mu, m, args.states as usize)?;
    let lambda = args.lambda.unwrap_or(0.0);
    if lambda < 0.0 {
        return Err(domain("the antiparticle sees +λ/r; give λ ≥ 0"));
    }
    let v: RadialFn<f64> = if lambda > 0.0 {
        radial_fn(move |r: f64| 2.0 * mu * r + lambda / r)
    } else {
        radial_fn(move |r: f64| 2.0 * mu * r)
    };
    let mut out = Vec::new();
    for (k, &e_airy) in airy.iter().enumerate() {
        let (reference, kind) = if lambda > 0.0 {
            (e_airy + antiparticle_coulomb_shift(mu, lambda, m, k + 1)?, "airy+first-order")
        } else {
            (e_airy, "airy")
        };
        let gap = if k == 0 {
            antiparticle_spectrum_airy(mu, m, 2)?[1] - airy[0]
        } else {
            airy[k] - airy[k - 1]
        };
        let grid = grid_for(&args.grid, |r_min| {
            suggest_schrodinger_grid(&v, 0, m, reference, args.grid.points, args.grid.spacing, r_min)
        })?;
        let s = schrodinger_state_near(&v, 0, m, &grid, reference, 0.3 * gap, k)?;
        let mut dump = Table::new(&["r", "u"]);
        for (r, u) in s.radii.iter().zip(&s.u) {
            dump.push(vec![Cell::from(*r), Cell::from(*u)]);
        }
        out.push(Solved {
            n: k as u32 + 1,
            kappa: -1,
            nodes: s.nodes,
            energy: s.energy,
            reference: Some(reference),
            kind,
            residual: s.residual,
            dump,
        });
    }
    Ok(out)
}

pub fn ansatz(args: &AnsatzArgs, common: &Common) -> Result<Outcome, Failure> {
    let p = build_ansatz(args.lambda, args.mu, args.kappa0, common.mass)?;
    let grid = p.default_grid(args.points)?;
    let residual = radial_residual(&p.detuned(args.detune), &grid)?;
    let norm = norm_by_quadrature(&p)?;
    let mut columns = vec![
        "lambda", "mu", "kappa0", "mass", "b", "s", "a", "alpha2", "gamma", "nu", "energy", "norm",
    ];
    columns.extend([
        "gamma_dev_1",
        "gamma_dev_2",
        "gamma_dev_3",
        "gamma_dev_4",
        "gamma_dev_5",
        "gamma_dev_6",
        "norm_defect",
        "residual",
        "coulomb_limit",
    ]);
    let mut t = Table::new(&columns);
    let c = &p.couplings;
    let mut row: Vec<Cell> = vec![
        c.lambda.into(),
        c.mu.into(),
        p.kappa0.into(),
        c.mass.into(),
        p.b.into(),
        p.s.into(),
        p.a.into(),
        p.alpha2.into(),
        p.gamma.into(),
        p.nu.into(),
        p.energy.into(),
        p.norm.into(),
    ];
    // NaN at μ = 0 for the two α² expressions: written as empty fields
    row.extend(p.gamma_expressions().iter().map(|&g| Cell::from((g - p.gamma).abs() / p.gamma)));
    row.push((norm - 1.0).abs().into());
    row.push(residual.into());
    row.push(p.is_coulomb_limit().into());
    t.push(row);
    Ok(t.into())
}
