use clap::{Args, ValueEnum};
use vf_core::bfun::BfOptions;
use vf_core::polyalg::parse::{valid_var_name, RESERVED};
use vf_core::polyalg::{parse_poly, Ideal, MonomialOrder, Poly, TermOrder};
use vf_core::rational::parse_rational;
use vf_core::vfilt::TruncationParams;
use vf_core::{Error, Q, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Grevlex,
    Lex,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Comma-separated variable names.
    #[arg(long, global = true)]
    pub vars: Option<String>,
    /// The hypersurface equation.
    #[arg(long, global = true)]
    pub f: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub k: u32,
    /// A rational such as 5/6.
    #[arg(long, global = true)]
    pub alpha: Option<String>,
    #[arg(long = "deg-bound", global = true)]
    pub deg_bound: Option<u32>,
    #[arg(long = "tail-deg", global = true)]
    pub tail_deg: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Grevlex)]
    pub order: OrderArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// Cap on Gröbner pair reductions.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// File of literature generators, one per line or `;`-separated.
    #[arg(long, global = true)]
    pub verify: Option<String>,
    /// Lower end of the range for `walls`.
    #[arg(long, global = true, default_value = "0")]
    pub lo: String,
    /// Upper end of the range for `walls`.
    #[arg(long, global = true, default_value = "1")]
    pub hi: String,
    /// Comma-separated β values for `family-limit`.
    #[arg(long, global = true)]
    pub at: Option<String>,
    /// `;`-separated generators.
    #[arg(long, global = true)]
    pub gens: Option<String>,
}

/// Variables, f and options shared by the subcommands.
pub struct Session {
    pub vars: Vec<String>,
    pub f: Poly,
    pub opts: BfOptions,
}

pub fn parse_vars(src: &str) -> Result<Vec<String>> {
    let vars: Vec<String> = src.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    if vars.is_empty() {
        return Err(Error::Invalid("--vars is empty".into()));
    }
    for (i, v) in vars.iter().enumerate() {
        if !valid_var_name(v) {
            return Err(Error::Invalid(format!("bad variable name {v:?}")));
        }
        if RESERVED.contains(&v.as_str()) {
            return Err(Error::Invalid(format!("variable name {v:?} is reserved")));
        }
        if vars[..i].contains(v) {
            return Err(Error::Invalid(format!("variable {v:?} given twice")));
        }
    }
    Ok(vars)
}

pub fn options(c: &Common) -> BfOptions {
    let mut opts = BfOptions::default();
    if let Some(b) = c.budget {
        opts.gb.pair_budget = b;
    }
    opts
}

impl Session {
    pub fn new(c: &Common) -> Result<Session> {
        let vars = parse_vars(c.vars.as_deref().ok_or_else(|| Error::Invalid("--vars is required".into()))?)?;
        let f = parse_poly(c.f.as_deref().ok_or_else(|| Error::Invalid("--f is required".into()))?, &vars)?;
        if f.is_constant() {
            return Err(Error::ConstantF);
        }
        Ok(Session { vars, f, opts: options(c) })
    }

    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn window(&self, c: &Common) -> Result<TruncationParams> {
        let deg_f = self.f.total_degree() as u32;
        let d = c.deg_bound.unwrap_or(8);
        TruncationParams::new(c.k, d, c.tail_deg, deg_f)
    }

    pub fn parse_gens(&self, src: &str) -> Result<Ideal> {
        let gens = split_gens(src).iter().map(|g| parse_poly(g, &self.vars)).collect::<Result<Vec<_>>>()?;
        Ideal::new(self.n(), gens)
    }
}

pub fn split_gens(src: &str) -> Vec<String> {
    src.split([';', '\n'])
        .map(|s| s.trim())
        .filter(|s| !s.is_empty() && !s.starts_with('#'))
        .map(|s| s.to_string())
        .collect()
}

pub fn alpha(c: &Common) -> Result<Q> {
    parse_rational(c.alpha.as_deref().ok_or_else(|| Error::Invalid("--alpha is required".into()))?)
}

pub fn parse_q(src: &str) -> Result<Q> {
    parse_rational(src.trim())
}

pub fn monomial_order(o: OrderArg, n: usize) -> MonomialOrder {
    match o {
        OrderArg::Grevlex => TermOrder::Grevlex.matrix(n),
        OrderArg::Lex => TermOrder::Lex.matrix(n),
    }
}
