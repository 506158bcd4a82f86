//! CSV writers. Numbers use Rust's shortest round-trip formatting, so
//! output is locale-independent and byte-stable.
//!
//! Metrics: `algorithm,run,window_index,rho,stderr`. One `mean` row per
//! window (with the standard error across runs) followed by one row per
//! run and window in run order, whose `stderr` is empty.
//!
//! Time-frequency trace: `entity,channel,start_ms,end_ms,reward`. Entities
//! are `jammer` (one row per dwell interval, clipped to the traced span,
//! empty reward) and `user1..userN` (one row per slot covering the
//! transmission window, reward 0 or 1). Rows are ordered by start time;
//! at equal start the jammer row comes first, then users in order.
//!
//! Q-table dump: `state_index,action_index,user,value`, state-major, then
//! action, then user (1-based).

use std::io::{self, Write};

use crate::harness::BatchResult;
use crate::jammer::{jam_intervals_in, transmission_window, SlotRecord, TimingConfig};
use crate::learners::QTable;

pub const METRICS_HEADER: [&str; 5] = ["algorithm", "run", "window_index", "rho", "stderr"];
pub const TRACE_HEADER: [&str; 5] = ["entity", "channel", "start_ms", "end_ms", "reward"];
pub const QTABLE_HEADER: [&str; 4] = ["state_index", "action_index", "user", "value"];

fn csv_err(e: csv::Error) -> io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => io::Error::other(format!("{other:?}")),
    }
}

pub fn write_metrics<W: Write>(out: W, batch: &BatchResult) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(METRICS_HEADER).map_err(csv_err)?;
    let name = batch.algorithm.name();
    for (i, (rho, se)) in batch.mean.iter().zip(&batch.stderr).enumerate() {
        w.write_record([name, "mean", &i.to_string(), &rho.to_string(), &se.to_string()])
            .map_err(csv_err)?;
    }
    for (run, metrics) in batch.runs.iter().enumerate() {
        let run = run.to_string();
        for (i, rho) in metrics.rho_series.iter().enumerate() {
            w.write_record([name, &run, &i.to_string(), &rho.to_string(), ""])
                .map_err(csv_err)?;
        }
    }
    w.flush()
}

pub fn write_trace<W: Write>(out: W, records: &[SlotRecord], timing: &TimingConfig) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRACE_HEADER).map_err(csv_err)?;
    let (Some(first), Some(last)) = (records.first(), records.last()) else {
        return w.flush();
    };
    let span_start = timing.slot_start(first.slot_index);
    let span_end = timing.slot_start(last.slot_index + 1);
    let mut jammer = jam_intervals_in(span_start, span_end, timing).into_iter().peekable();
    for rec in records {
        let (start, end) = transmission_window(rec.slot_index, timing);
        while let Some(iv) = jammer.next_if(|iv| iv.start_ms <= start) {
            w.write_record([
                "jammer",
                &iv.channel.to_string(),
                &iv.start_ms.to_string(),
                &iv.end_ms.to_string(),
                "",
            ])
            .map_err(csv_err)?;
        }
        for (n, (c, r)) in rec.actions.channels().iter().zip(&rec.per_user_reward).enumerate() {
            w.write_record([
                &format!("user{}", n + 1),
                &c.to_string(),
                &start.to_string(),
                &end.to_string(),
                &r.to_string(),
            ])
            .map_err(csv_err)?;
        }
    }
    for iv in jammer {
        w.write_record([
            "jammer",
            &iv.channel.to_string(),
            &iv.start_ms.to_string(),
            &iv.end_ms.to_string(),
            "",
        ])
        .map_err(csv_err)?;
    }
    w.flush()
}

pub fn write_qtables<W: Write>(out: W, tables: &[QTable]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(QTABLE_HEADER).map_err(csv_err)?;
    let Some(first) = tables.first() else {
        return w.flush();
    };
    for s in 0..first.num_states() {
        for a in 0..first.num_actions() {
            for (u, t) in tables.iter().enumerate() {
                w.write_record([
                    s.to_string(),
                    a.to_string(),
                    (u + 1).to_string(),
                    t.get(s, a).to_string(),
                ])
                .map_err(csv_err)?;
            }
        }
    }
    w.flush()
}
