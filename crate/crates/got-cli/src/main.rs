use std::process::ExitCode;

use clap::{Parser, Subcommand};

use got_cli::commands::{
    run_equal, run_hermite, run_laguerre, run_list, run_order, run_verify, CmdOutput, Format,
    UsageError, VerifyArgs, EXIT_USAGE,
};

/// Exact s-ordering calculus for a single bosonic mode.
#[derive(Parser)]
#[command(name = "got", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rewrite an expression into canonical t-ordered form.
    Order {
        /// Target ordering parameter: N, A, W, or a rational like -1/2.
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Output format.
        #[arg(long, default_value = "text")]
        format: String,
        /// The expression, e.g. "a * ad" or "{ad^2 a}_N + 3/2".
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Check two expressions for canonical equality at a target order.
    Equal {
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(allow_hyphen_values = true)]
        expr1: String,
        #[arg(allow_hyphen_values = true)]
        expr2: String,
    },
    /// Run a registered ordering identity check.
    Verify {
        /// Identity name; see `got list-identities`.
        #[arg(long)]
        identity: String,
        /// Source ordering parameter (rational).
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        /// Target ordering parameter (rational).
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        /// Numeric lambda for identities evaluated pointwise.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Contraction weight tau (or kappa) for Hermite/Laguerre checks.
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<String>,
        /// Power/index n, where applicable.
        #[arg(long)]
        n: Option<u32>,
        /// Power/index m (or polynomial degree bound), where applicable.
        #[arg(long)]
        m: Option<u32>,
        /// Largest basis monomial z^k probed by oracle-backed checks.
        #[arg(long = "max-k")]
        max_k: Option<u32>,
        /// Truncation order K of series-backed checks.
        #[arg(long = "max-order")]
        max_order: Option<usize>,
        /// Alias of --max-k: bounds the probed basis range.
        #[arg(long)]
        cutoff: Option<u32>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Print a two-variable Hermite polynomial H_{m,n} (or h_{m,n}(.|tau)).
    Hermite {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Contraction weight; omitted means the plain Hermite case (-1).
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<String>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Print a generalized Laguerre polynomial L_n^alpha.
    Laguerre {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        alpha: i64,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// List the registered identities and their modes.
    ListIdentities {
        #[arg(long, default_value = "text")]
        format: String,
    },
}

fn dispatch(cmd: Cmd) -> Result<CmdOutput, UsageError> {
    match cmd {
        Cmd::Order {
            target,
            format,
            expr,
        } => run_order(&expr, &target, Format::from_flag(&format)?),
        Cmd::Equal {
            target,
            format,
            expr1,
            expr2,
        } => run_equal(&expr1, &expr2, &target, Format::from_flag(&format)?),
        Cmd::Verify {
            identity,
            s,
            t,
            lambda,
            tau,
            n,
            m,
            max_k,
            max_order,
            cutoff,
            format,
        } => {
            let args = VerifyArgs {
                s,
                t,
                lambda,
                tau,
                n,
                m,
                max_k,
                max_order,
                cutoff,
            };
            run_verify(&identity, &args, Format::from_flag(&format)?)
        }
        Cmd::Hermite { m, n, tau, format } => run_hermite(m, n, &tau, Format::from_flag(&format)?),
        Cmd::Laguerre { n, alpha, format } => run_laguerre(n, alpha, Format::from_flag(&format)?),
        Cmd::ListIdentities { format } => run_list(Format::from_flag(&format)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(out) => {
            println!("{}", out.text);
            ExitCode::from(out.code as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
