use crate::report::{Cell, Report};
use crate::{parse_complex_arg, parse_group};
use clap::{Args, ValueEnum};
use lowlying::debranges::xi0 as first_zero;
use lowlying::embedding::{eigen_oracle, sharp_constants, ORACLE_RESOLUTION};
use lowlying::extremal::{
    curve_max, nonvanishing_proportion, proportion_curve, DeltaProblem, DeltaProblemSolution, DEFAULT_CURVE_STEP,
};
use lowlying::fredholm::{kernel_via_oracle, ACCEPTANCE_RESOLUTION};
use lowlying::numerics::QuadratureConfig;
use lowlying::symmetry::weighted_inner;
use lowlying::{KernelSpace, SymmetryGroup};
use num_complex::Complex64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] lowlying::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use lowlying::Error as E;
        match self {
            CliError::Usage(_) | CliError::Lib(E::InvalidArgument(_)) => 2,
            CliError::Lib(E::ClosedFormUnavailable { .. } | E::UnsupportedRange { .. }) => 3,
            CliError::Lib(_) => 4,
        }
    }
}

type CmdResult = Result<Report, CliError>;

/// A group or every group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupSel {
    All,
    One(SymmetryGroup),
}

fn parse_group_sel(s: &str) -> Result<GroupSel, String> {
    if s == "all" {
        Ok(GroupSel::All)
    } else {
        parse_group(s).map(GroupSel::One)
    }
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct KernelArgs {
    #[arg(long, value_parser = parse_group)]
    group: SymmetryGroup,
    #[arg(long)]
    delta: f64,
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    w: Complex64,
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    z: Complex64,
    /// Also evaluate the Nyström oracle and report the difference.
    #[arg(long)]
    oracle: bool,
    /// Oracle grid resolution.
    #[arg(long, default_value_t = ACCEPTANCE_RESOLUTION)]
    n: usize,
}

pub fn kernel(a: &KernelArgs) -> CmdResult {
    let space = KernelSpace::new(a.group, a.delta)?;
    let k = lowlying::kernel(space, a.w, a.z)?;
    if !a.oracle {
        let mut r = Report::new("kernel", &["re", "im"]);
        r.push(vec![k.re.into(), k.im.into()]);
        return Ok(r);
    }
    let o = kernel_via_oracle(a.group, a.delta, a.w, a.z, a.n)?;
    let mut r = Report::new("kernel", &["re", "im", "oracle_re", "oracle_im", "abs_diff"]);
    r.push(vec![k.re.into(), k.im.into(), o.re.into(), o.im.into(), (k - o).norm().into()]);
    Ok(r)
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ProportionArgs {
    #[arg(long, value_parser = parse_group)]
    group: SymmetryGroup,
    #[arg(long)]
    delta: f64,
    /// Single height; overrides the range options.
    #[arg(long, conflicts_with_all = ["t_min", "t_max"])]
    t: Option<f64>,
    #[arg(long, default_value_t = 0.001)]
    t_min: f64,
    #[arg(long, default_value_t = 2.0)]
    t_max: f64,
    #[arg(long, default_value_t = DEFAULT_CURVE_STEP)]
    step: f64,
    /// Append the refined maximum of the sampled curve as a final row.
    #[arg(long)]
    find_max: bool,
}

pub fn proportion(a: &ProportionArgs) -> CmdResult {
    let space = KernelSpace::new(a.group, a.delta)?;
    let mut r = Report::new("proportion", &["t", "p"]);
    let single = a.t.or(if a.step == 0.0 || a.t_min == a.t_max { Some(a.t_min) } else { None });
    if let Some(t) = single {
        if !(t >= 0.0) {
            return Err(CliError::Usage(format!("--t must be nonnegative, got {t}")));
        }
        r.push(vec![t.into(), nonvanishing_proportion(space, t)?.into()]);
        return Ok(r);
    }
    let curve = proportion_curve(space, a.t_min, a.t_max, a.step)?;
    for &(t, p) in &curve.samples {
        r.push(vec![t.into(), p.into()]);
    }
    if a.find_max {
        let (t, p) = curve_max(&curve)?;
        r.push(vec![t.into(), p.into()]);
    }
    Ok(r)
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct Xi0Args {
    /// Group; omit for the table over all symmetry classes.
    #[arg(long, value_parser = parse_group)]
    group: Option<SymmetryGroup>,
    /// Bandwidth; omit for Δ ∈ {1, 4/3, 3/2, 2}.
    #[arg(long)]
    delta: Option<f64>,
}

pub const TABLE_DELTAS: [f64; 4] = [1.0, 4.0 / 3.0, 1.5, 2.0];

/// Classes sharing a first-zero bound, labelled by their members.
const XI0_CLASSES: [(&str, SymmetryGroup); 3] =
    [("so-even", SymmetryGroup::SoEven), ("u/o", SymmetryGroup::U), ("sp/so-odd", SymmetryGroup::Sp)];

pub fn xi0(a: &Xi0Args) -> CmdResult {
    let deltas: Vec<f64> = a.delta.map(|d| vec![d]).unwrap_or_else(|| TABLE_DELTAS.to_vec());
    let groups: Vec<(String, SymmetryGroup)> = match a.group {
        Some(g) => vec![(g.cli_name().to_string(), g)],
        None => XI0_CLASSES.iter().map(|(l, g)| (l.to_string(), *g)).collect(),
    };
    let mut r = Report::new("xi0", &["group", "delta", "xi0"]);
    for (label, g) in &groups {
        for &d in &deltas {
            let res = first_zero(*g, d)?;
            r.push(vec![label.as_str().into(), d.into(), res.xi0.into()]);
        }
    }
    Ok(r)
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EmbeddingArgs {
    /// Group name or `all`.
    #[arg(long, value_parser = parse_group_sel)]
    group: GroupSel,
    #[arg(long)]
    delta: f64,
    /// Add the extreme eigenvalues of the discretised convolution operator.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = ORACLE_RESOLUTION)]
    n: usize,
}

pub fn embedding(a: &EmbeddingArgs) -> CmdResult {
    let groups: Vec<SymmetryGroup> = match a.group {
        GroupSel::All => SymmetryGroup::ALL.to_vec(),
        GroupSel::One(g) => vec![g],
    };
    let mut cols = vec!["eta_minus", "eta_plus", "c_minus", "c_plus"];
    if a.group == GroupSel::All {
        cols.insert(0, "group");
    }
    if a.oracle {
        cols.extend(["oracle_lambda_min", "oracle_lambda_max"]);
    }
    let mut r = Report::new("embedding", &cols);
    for g in groups {
        let c = sharp_constants(g, a.delta)?;
        let mut row: Vec<Cell> = Vec::new();
        if a.group == GroupSel::All {
            row.push(g.cli_name().into());
        }
        row.extend([c.eta_minus.into(), c.eta_plus.into(), c.c_minus.into(), c.c_plus.into()]);
        if a.oracle {
            let (lo, hi) = eigen_oracle(g, a.delta, a.n)?;
            row.extend([lo.into(), hi.into()]);
        }
        r.push(row);
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    One,
    Two,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ExtremizerArgs {
    #[arg(long, value_parser = parse_group)]
    group: SymmetryGroup,
    #[arg(long)]
    delta: f64,
    #[arg(long)]
    t: f64,
    #[arg(long, value_enum, default_value_t = ProblemArg::Two)]
    problem: ProblemArg,
    #[arg(long, default_value_t = 5.0)]
    x_max: f64,
    #[arg(long, default_value_t = 0.01)]
    x_step: f64,
    /// Add the optimal value and the quadrature of the extremal function
    /// against the density as constant columns.
    #[arg(long)]
    with_integral: bool,
    /// Truncation of the integral column.
    #[arg(long, default_value_t = 400.0)]
    truncation: f64,
}

pub fn extremizer(a: &ExtremizerArgs) -> CmdResult {
    if !(a.x_max > 0.0 && a.x_step > 0.0) || !(a.x_max / a.x_step <= 1e7) {
        return Err(CliError::Usage(format!("need x-max > 0 and 0 < x-step, got {} and {}", a.x_max, a.x_step)));
    }
    if !(a.t >= 0.0) {
        return Err(CliError::Usage(format!("--t must be nonnegative, got {}", a.t)));
    }
    let space = KernelSpace::new(a.group, a.delta)?;
    let problem = match a.problem {
        ProblemArg::One => DeltaProblem::OneDelta,
        ProblemArg::Two => DeltaProblem::TwoDelta,
    };
    let sol = DeltaProblemSolution::new(space, a.t, problem)?;
    let mut cols = vec!["x", "m"];
    let mut extra: Vec<Cell> = Vec::new();
    if a.with_integral {
        cols.extend(["value", "integral"]);
        let integral = weighted_inner(
            |x| Complex64::new(sol.extremizer(x), 0.0),
            |_| Complex64::new(1.0, 0.0),
            a.group,
            a.truncation,
            &QuadratureConfig::default(),
        )?
        .re;
        extra = vec![sol.value.into(), integral.into()];
    }
    let mut r = Report::new("extremizer", &cols);
    let half = (a.x_max / a.x_step).round() as i64;
    for k in -half..=half {
        let x = k as f64 * a.x_step;
        let mut row: Vec<Cell> = vec![x.into(), sol.extremizer(x).into()];
        row.extend(extra.iter().cloned());
        r.push(row);
    }
    Ok(r)
}
