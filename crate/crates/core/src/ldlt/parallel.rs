// SPDX-License-Identifier: Apache-2.0

//! Pipelined LDLᵀ over scoped worker threads.
//!
//! Column `p + 1` is finished as soon as column `p` has been applied to it, by
//! the worker that owns it. That worker then sends `C` and as much of
//! `CDivDiag` as the channel carries while it applies column `p` to the rest of
//! its columns. Receivers compute whatever `CDivDiag` rows did not arrive.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Condvar, Mutex, MutexGuard};
use std::thread;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use super::assign::{assign_columns, ColumnAssignment};
use super::channel::{ColumnChannel, SharedMemoryChannel};
use super::serial::pivot_product;
use super::timing::{Phase, TimingBreakdown};
use super::workspace::{mantissa_bytes, ColumnBuffers, ShiftedWorkspace};
use super::{Determinant, SymmetricMatrix};
use crate::error::{Error, Result};
use crate::fixed::FixedPoint;

#[derive(Clone, Debug)]
pub struct ParallelOptions {
    pub workers: usize,
    pub channel: Arc<dyn ColumnChannel>,
    /// Smallest `CDivDiag` chunk sent over a throttled channel.
    pub min_chunk: usize,
    /// A chunk is at least `remaining / chunk_divisor` rows.
    pub chunk_divisor: usize,
    /// Worker `rank` drops out before stage `p`. Fault injection for tests.
    #[doc(hidden)]
    pub disconnect_at: Option<(usize, usize)>,
}

impl ParallelOptions {
    pub fn new(workers: usize, channel: Arc<dyn ColumnChannel>) -> Self {
        Self {
            workers,
            channel,
            min_chunk: 64,
            chunk_divisor: 16,
            disconnect_at: None,
        }
    }

    pub fn shared_memory(workers: usize) -> Self {
        Self::new(workers, Arc::new(SharedMemoryChannel))
    }
}

const POLL: Duration = Duration::from_millis(20);

#[derive(Default)]
struct SlotState {
    column: Option<Arc<Vec<BigInt>>>,
    chunks: Vec<Arc<Vec<BigInt>>>,
    closed: bool,
    readers_left: usize,
    pivot: Option<BigInt>,
}

#[derive(Default)]
struct Slot {
    state: Mutex<SlotState>,
    changed: Condvar,
}

/// One slot per stage plus a shared failure flag.
struct Board {
    slots: Vec<Slot>,
    aborted: AtomicBool,
    error: Mutex<Option<Error>>,
}

fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|e| e.into_inner())
}

impl Board {
    fn new(n: usize, readers: usize) -> Self {
        let slots = (0..n)
            .map(|_| Slot {
                state: Mutex::new(SlotState {
                    readers_left: readers,
                    ..SlotState::default()
                }),
                changed: Condvar::new(),
            })
            .collect();
        Self {
            slots,
            aborted: AtomicBool::new(false),
            error: Mutex::new(None),
        }
    }

    fn fail(&self, err: Error) {
        lock(&self.error).get_or_insert(err);
        self.aborted.store(true, Ordering::Release);
        for slot in &self.slots {
            slot.changed.notify_all();
        }
    }

    fn is_aborted(&self) -> bool {
        self.aborted.load(Ordering::Acquire)
    }

    fn set_pivot(&self, stage: usize, pivot: BigInt) {
        lock(&self.slots[stage].state).pivot = Some(pivot);
    }

    fn publish_column(&self, stage: usize, column: Arc<Vec<BigInt>>) {
        let slot = &self.slots[stage];
        lock(&slot.state).column = Some(column);
        slot.changed.notify_all();
    }

    fn publish_chunk(&self, stage: usize, chunk: Vec<BigInt>) {
        let slot = &self.slots[stage];
        lock(&slot.state).chunks.push(Arc::new(chunk));
        slot.changed.notify_all();
    }

    fn close(&self, stage: usize) {
        let slot = &self.slots[stage];
        lock(&slot.state).closed = true;
        slot.changed.notify_all();
    }

    /// Wait for stage `stage` to close and take a view of what was sent.
    fn receive(&self, stage: usize) -> Result<(Arc<Vec<BigInt>>, Vec<BigInt>)> {
        let slot = &self.slots[stage];
        let mut st = lock(&slot.state);
        while !st.closed {
            if self.is_aborted() {
                return Err(Error::ChannelFailure(format!(
                    "pipeline aborted while waiting for column {stage}"
                )));
            }
            st = slot
                .changed
                .wait_timeout(st, POLL)
                .unwrap_or_else(|e| e.into_inner())
                .0;
        }
        let column = st.column.clone().ok_or_else(|| {
            Error::ChannelFailure(format!("column {stage} closed without data"))
        })?;
        let received: Vec<BigInt> = st.chunks.iter().flat_map(|c| c.iter().cloned()).collect();
        st.readers_left = st.readers_left.saturating_sub(1);
        if st.readers_left == 0 {
            st.column = None;
            st.chunks.clear();
        }
        Ok((column, received))
    }

    fn pivot(&self, stage: usize) -> Option<BigInt> {
        lock(&self.slots[stage].state).pivot.clone()
    }
}

/// Send `C` and then `CDivDiag` chunks until the owner's own work is done.
fn transmit(
    board: &Board,
    buf: &ColumnBuffers,
    opts: &ParallelOptions,
    foreground_done: &AtomicBool,
) {
    let stage = buf.pivot_col();
    let channel = &opts.channel;
    let cdd = &buf.cdiv_diag()[1..];
    if channel.is_instant() {
        board.publish_column(stage, Arc::clone(buf.column()));
        board.publish_chunk(stage, cdd.to_vec());
        board.close(stage);
        return;
    }
    thread::sleep(channel.transfer_time(buf.column_bytes()));
    board.publish_column(stage, Arc::clone(buf.column()));
    let mut sent = 0;
    while sent < cdd.len() && !foreground_done.load(Ordering::Acquire) && !board.is_aborted() {
        let remaining = cdd.len() - sent;
        let size = opts
            .min_chunk
            .max(remaining.div_ceil(opts.chunk_divisor.max(1)))
            .min(remaining);
        let chunk = &cdd[sent..sent + size];
        thread::sleep(channel.transfer_time(mantissa_bytes(chunk)));
        board.publish_chunk(stage, chunk.to_vec());
        sent += size;
    }
    board.close(stage);
}

fn timed<T>(timing: &mut TimingBreakdown, phase: Phase, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timing.record_phase(phase, start.elapsed());
    out
}

struct Worker<'a, M: ?Sized> {
    rank: usize,
    matrix: &'a M,
    shift: &'a FixedPoint,
    assignment: &'a ColumnAssignment,
    board: &'a Board,
    opts: &'a ParallelOptions,
}

impl<M: SymmetricMatrix + ?Sized> Worker<'_, M> {
    fn run(&self, first: Arc<ColumnBuffers>) -> Result<TimingBreakdown> {
        let start = Instant::now();
        let mut timing = TimingBreakdown::default();
        let mut ws = ShiftedWorkspace::for_owner(self.matrix, self.shift, self.assignment, self.rank)?;
        let n = ws.order();
        let half = ws.half_bits();
        let mut current = first;
        for p in 0..n - 1 {
            if self.opts.disconnect_at == Some((self.rank, p)) {
                return Err(Error::ChannelFailure(format!("worker {} disconnected", self.rank)));
            }
            if self.board.is_aborted() {
                return Err(Error::ChannelFailure("pipeline aborted".into()));
            }
            let next = p + 1;
            if self.assignment.owner(next) == self.rank {
                let buf = timed(&mut timing, Phase::Compute, || {
                    ws.apply_column(&current, next, next);
                    ws.finish_column(next)
                })?;
                self.board.set_pivot(next, buf.column()[0].clone());
                if self.opts.workers > 1 {
                    let done = AtomicBool::new(false);
                    thread::scope(|s| {
                        let sender = s.spawn(|| transmit(self.board, &buf, self.opts, &done));
                        timed(&mut timing, Phase::Compute, || {
                            ws.apply_column(&current, next + 1, n - 1);
                        });
                        done.store(true, Ordering::Release);
                        timed(&mut timing, Phase::NetWait, || sender.join())
                    })
                    .map_err(|_| Error::ChannelFailure(format!("sender for column {next} panicked")))?;
                } else {
                    timed(&mut timing, Phase::Compute, || {
                        ws.apply_column(&current, next + 1, n - 1);
                    });
                }
                current = Arc::new(buf);
            } else {
                timed(&mut timing, Phase::Compute, || {
                    ws.apply_column(&current, next, n - 1);
                });
                let (column, received) =
                    timed(&mut timing, Phase::NetWait, || self.board.receive(next))?;
                let missing = column.len() - 1 - received.len();
                let buf = if missing > 0 {
                    timed(&mut timing, Phase::Div, || {
                        ColumnBuffers::complete(next, column, received, half, n)
                    })?
                } else {
                    ColumnBuffers::complete(next, column, received, half, n)?
                };
                current = Arc::new(buf);
            }
        }
        timing.record_total(start.elapsed());
        Ok(timing)
    }
}

/// Raises `ChannelFailure` on the board if a worker unwinds without finishing.
struct DisconnectGuard<'a> {
    board: &'a Board,
    rank: usize,
    armed: bool,
}

impl Drop for DisconnectGuard<'_> {
    fn drop(&mut self) {
        if self.armed {
            self.board
                .fail(Error::ChannelFailure(format!("worker {} disconnected", self.rank)));
        }
    }
}

/// `det(m - shift·I)` with `opts.workers` threads. The value and pivots are
/// bit-identical to [`ldlt_det_serial`](super::ldlt_det_serial).
///
/// The phase times in the returned breakdown are per-worker means; `total_s`
/// is the wall time of the whole call.
pub fn ldlt_det_parallel<M: SymmetricMatrix + ?Sized>(
    m: &M,
    shift: &FixedPoint,
    opts: &ParallelOptions,
) -> Result<(Determinant, TimingBreakdown)> {
    let start = Instant::now();
    let n = m.order();
    let assignment = assign_columns(n, opts.workers)?;
    let half = m.frac_bits() / 2;

    // Stage 0 is prepared by the coordinator and handed to everyone.
    let first = {
        let mut ws = ShiftedWorkspace::with_columns(m, shift, |c| c == 0)?;
        Arc::new(ws.finish_column(0)?)
    };
    let board = Board::new(n, opts.workers - 1);
    board.set_pivot(0, first.column()[0].clone());

    let mut per_worker = Vec::with_capacity(opts.workers);
    if n > 1 {
        let results: Vec<Result<TimingBreakdown>> = thread::scope(|s| {
            let handles: Vec<_> = (0..opts.workers)
                .map(|rank| {
                    let worker = Worker {
                        rank,
                        matrix: m,
                        shift,
                        assignment: &assignment,
                        board: &board,
                        opts,
                    };
                    let first = Arc::clone(&first);
                    let board = &board;
                    s.spawn(move || {
                        let mut guard = DisconnectGuard {
                            board,
                            rank,
                            armed: true,
                        };
                        let out = worker.run(first);
                        match &out {
                            Ok(_) => guard.armed = false,
                            Err(e) => {
                                board.fail(e.clone());
                                guard.armed = false;
                            }
                        }
                        out
                    })
                })
                .collect();
            handles
                .into_iter()
                .enumerate()
                .map(|(rank, h)| {
                    h.join().unwrap_or_else(|_| {
                        Err(Error::ChannelFailure(format!("worker {rank} panicked")))
                    })
                })
                .collect()
        });
        if let Some(err) = lock(&board.error).take() {
            return Err(err);
        }
        for r in results {
            per_worker.push(r?);
        }
    }

    let pivots = (0..n)
        .map(|p| {
            board
                .pivot(p)
                .map(|v| FixedPoint::new(v, half))
                .ok_or_else(|| Error::ChannelFailure(format!("pivot {p} never arrived")))
        })
        .collect::<Result<Vec<_>>>()?;
    let value = pivot_product(&pivots, half);
    let mut timing = TimingBreakdown::mean_of(&per_worker);
    timing.record_total(start.elapsed());
    Ok((Determinant { value, pivots }, timing))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ldlt::{ldlt_det_serial, DenseSymmetric, ThrottledChannel};

    fn sample(n: usize, k: u32) -> DenseSymmetric {
        // Diagonally dominant with varied off-diagonal values.
        DenseSymmetric::from_fn(n, k, |r, c| {
            let v = if r == c {
                BigInt::from(4 * n as i64 + r as i64) << k
            } else {
                (BigInt::from(((r * 7 + c * 3) % 11) as i64 - 5) << k) / 3
            };
            FixedPoint::new(v, k)
        })
    }

    #[test]
    fn matches_serial_bit_for_bit() {
        for (n, k) in [(1, 64), (2, 64), (7, 129), (13, 200)] {
            let m = sample(n, k);
            let x = FixedPoint::from_ratio(&1.into(), &7.into(), k).unwrap();
            let serial = ldlt_det_serial(&m, &x).unwrap();
            for s in [1, 2, 3, 4] {
                let (par, _) = ldlt_det_parallel(&m, &x, &ParallelOptions::shared_memory(s)).unwrap();
                assert_eq!(par, serial, "n={n} workers={s}");
            }
        }
    }

    #[test]
    fn throttled_matches_and_reports_waits() {
        let m = sample(10, 128);
        let x = FixedPoint::zero(128);
        let serial = ldlt_det_serial(&m, &x).unwrap();
        let channel = Arc::new(ThrottledChannel::new(2e5, Duration::from_micros(200)).unwrap());
        let mut opts = ParallelOptions::new(3, channel);
        opts.min_chunk = 2;
        let (par, timing) = ldlt_det_parallel(&m, &x, &opts).unwrap();
        assert_eq!(par, serial);
        assert!(timing.net_s > 0.0);
        assert!(timing.compute_s + timing.net_s + timing.div_s <= timing.total_s * 1.001);
    }

    #[test]
    fn unthrottled_sends_every_division() {
        let m = sample(12, 128);
        let (_, timing) =
            ldlt_det_parallel(&m, &FixedPoint::zero(128), &ParallelOptions::shared_memory(3)).unwrap();
        assert_eq!(timing.div_s, 0.0);
    }

    #[test]
    fn disconnect_surfaces_as_channel_failure() {
        let m = sample(9, 64);
        let mut opts = ParallelOptions::shared_memory(3);
        opts.disconnect_at = Some((1, 2));
        assert!(matches!(
            ldlt_det_parallel(&m, &FixedPoint::zero(64), &opts),
            Err(Error::ChannelFailure(_))
        ));
    }

    #[test]
    fn zero_pivot_propagates() {
        let m = DenseSymmetric::from_fn(4, 32, |r, c| FixedPoint::from_integer(i64::from(r != c), 32));
        let err = ldlt_det_parallel(&m, &FixedPoint::zero(32), &ParallelOptions::shared_memory(2));
        assert!(matches!(err, Err(Error::ZeroPivot { index: 0, .. })));
        // Zero pivot later in the pipeline: [[1,1,0],[1,1,0],[0,0,1]]
        let vals = [[1, 1, 0], [1, 1, 0], [0, 0, 1]];
        let m = DenseSymmetric::from_fn(3, 32, |r, c| FixedPoint::from_integer(vals[r][c], 32));
        let err = ldlt_det_parallel(&m, &FixedPoint::zero(32), &ParallelOptions::shared_memory(2));
        assert!(matches!(err, Err(Error::ZeroPivot { index: 1, .. })));
    }

    #[test]
    fn rejects_no_workers() {
        let m = sample(3, 32);
        assert!(ldlt_det_parallel(&m, &FixedPoint::zero(32), &ParallelOptions::shared_memory(0)).is_err());
    }
}
