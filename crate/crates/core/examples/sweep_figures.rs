//! Writes the level-versus-field data as CSV: lowest two levels for a set of
//! `m` against `S` at `coulomb = 100`, plus the `m = -5` ground level around
//! its slope kink.
//!
//! cargo run --release --example sweep_figures -- [out_dir]

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use heun_sphere::sweep::{s_grid, success_rate, sweep, write_csv, Source, SweepPlan};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&dir)?;

    let plans = [
        (
            "levels_vs_s.csv",
            SweepPlan {
                m_list: vec![-5, -2, 0, 2, 5],
                s_values: s_grid(1.0, 30.0, 0.5)?,
                coulomb: 100.0,
                levels: 2,
                sources: vec![Source::Cf, Source::Landau],
            },
        ),
        (
            "kink_m_minus_5.csv",
            SweepPlan {
                m_list: vec![-5],
                s_values: s_grid(1.0, 15.0, 0.25)?,
                coulomb: 100.0,
                levels: 1,
                sources: vec![Source::Cf],
            },
        ),
    ];
    for (name, plan) in plans {
        let records = sweep(&plan)?;
        let path = dir.join(name);
        write_csv(&records, BufWriter::new(File::create(&path)?))?;
        println!("{}: {} rows, {:.0}% ok", path.display(), records.len(), 100.0 * success_rate(&records));
    }
    Ok(())
}
