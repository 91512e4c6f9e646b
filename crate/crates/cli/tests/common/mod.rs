#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fattail::distfit::{sample_laplace, sample_normal, LaplaceParams, NormalParams, RngSeed};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fattail"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn fattail")
}

pub fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Yahoo-layout CSV whose adjusted closes compound the given returns from 100.
pub fn prices_csv(returns: &[f64]) -> String {
    let mut out = String::from("Date,Open,High,Low,Close,Adj Close,Volume\n");
    let mut date = chrono::NaiveDate::from_ymd_opt(2012, 1, 3).unwrap();
    let mut price = 100.0f64;
    for i in 0..=returns.len() {
        if i > 0 {
            price *= 1.0 + returns[i - 1];
            date = date.succ_opt().unwrap();
        }
        out.push_str(&format!("{date},{price},{price},{price},{price},{price},{}\n", 1_000_000 + i));
    }
    out
}

pub fn laplace_returns(n: usize, seed: u64) -> Vec<f64> {
    sample_laplace(n, &LaplaceParams::new(0.0004, 0.008).unwrap(), RngSeed(seed))
}

pub fn normal_returns(n: usize, seed: u64) -> Vec<f64> {
    sample_normal(n, &NormalParams::new(0.0004, 0.011).unwrap(), RngSeed(seed))
}

pub fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}
