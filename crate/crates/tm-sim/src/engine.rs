//! The tick loop. Each tick runs five phases in fixed order — inject,
//! execute, trigger, cover, complete — and every list involved is walked in
//! declaration or token-id order, so a run is a pure function of
//! (model, schedule, budget).

use tm_core::{ActionKind, Guard, Model};

use crate::state::{init_sim, SimError, SimState, Stimulus, Token};
use crate::trace::{ExecutionRecord, FinalSummary, Trace};

/// Accounting for one tick. The token-population identity
/// `after - before = injected + spawned - retired - removed`
/// holds for every tick.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TickReport {
    pub executions: Vec<ExecutionRecord>,
    /// Event ids completed this tick, in declaration order.
    pub completions: Vec<String>,
    pub injected: usize,
    /// Tokens created by trigger firings.
    pub spawned: usize,
    /// Tokens that executed a node with no outgoing flow.
    pub retired: usize,
    /// Tokens removed by cancellation or dropped on disabled nodes.
    pub removed: usize,
}

fn guard_holds(guard: &Option<Guard>, state: &SimState) -> bool {
    let Some(g) = guard else { return true };
    let current = state
        .stores
        .get(&g.store)
        .map(|s| s.value.as_str())
        .unwrap_or("");
    match g.op {
        tm_core::GuardOp::Equals => current == g.value,
        tm_core::GuardOp::NotEquals => current != g.value,
    }
}

/// Advance the state by one tick.
pub fn step(state: &mut SimState, model: &Model) -> TickReport {
    let tick = state.tick;
    let mut report = TickReport::default();

    // (1) This tick's stimuli become tokens, in schedule order. A stimulus
    // aimed at a node that cancellation has disabled is dropped.
    while state.next_stimulus < state.schedule.len()
        && state.schedule[state.next_stimulus].tick == tick
    {
        let stim = state.schedule[state.next_stimulus].clone();
        state.next_stimulus += 1;
        if state.disabled.contains(&stim.node) {
            continue;
        }
        let token = Token {
            id: state.next_token_id,
            label: stim.label,
            at: stim.node,
        };
        state.next_token_id += 1;
        state.tokens.push(token);
        report.injected += 1;
    }

    // (2) Every live token executes its node once, in id order, then moves
    // along the first declared outgoing flow or retires. Tokens stranded on
    // disabled nodes vanish without executing.
    let tokens = std::mem::take(&mut state.tokens);
    let mut survivors: Vec<Token> = Vec::with_capacity(tokens.len());
    for mut token in tokens {
        if state.disabled.contains(&token.at) {
            report.removed += 1;
            continue;
        }
        report.executions.push(ExecutionRecord {
            tick,
            node: token.at.clone(),
            token: token.id,
            label: token.label.clone(),
        });
        let node = model
            .action(&token.at)
            .expect("validated model: token sits on a declared node");
        if let Some(store_id) = &node.store {
            // A create writes what it declares (its own label), falling back
            // to the token; a receive records the thing that arrived.
            let written = match node.kind {
                ActionKind::Create => {
                    Some(node.label.clone().unwrap_or_else(|| token.label.clone()))
                }
                ActionKind::Receive => Some(token.label.clone()),
                _ => None,
            };
            if let Some(value) = written {
                if let Some(store) = state.stores.get_mut(store_id) {
                    store.write(tick, value);
                }
            }
        }
        let next_at = model.flows_from(&token.at).next().map(|f| f.dst.clone());
        match next_at {
            Some(dst) => {
                token.at = dst;
                survivors.push(token);
            }
            None => report.retired += 1,
        }
    }
    state.tokens = survivors;

    // (3) Each execution fires its node's outgoing triggers, in declaration
    // order, against the store values as they stand now. A firing trigger
    // injects a fresh token at the target, which first runs next tick.
    for exec in &report.executions {
        for trig in model.triggers_from(&exec.node) {
            if !guard_holds(&trig.guard, state) {
                continue;
            }
            if state.disabled.contains(&trig.dst) {
                continue;
            }
            let token = Token {
                id: state.next_token_id,
                label: exec.label.clone(),
                at: trig.dst.clone(),
            };
            state.next_token_id += 1;
            state.tokens.push(token);
            report.spawned += 1;
        }
    }

    // (4) Coverage absorbs this tick's executions.
    for exec in &report.executions {
        for (i, event) in model.events.iter().enumerate() {
            for (j, member) in event.region.iter().enumerate() {
                if *member == exec.node {
                    state.coverage[i][j] = true;
                }
            }
        }
    }

    // (5) Fully covered events complete, in declaration order. Completion
    // resets the event's own coverage (it may complete again later) and
    // applies its cancellation, if any — which can strip coverage from
    // events later in this same pass.
    for i in 0..model.events.len() {
        if state.coverage[i].is_empty() || !state.coverage[i].iter().all(|&b| b) {
            continue;
        }
        let event_id = model.events[i].id.clone();
        state.completions.push((tick, event_id.clone()));
        report.completions.push(event_id);
        for flag in &mut state.coverage[i] {
            *flag = false;
        }
        if model.events[i].cancels.is_some() {
            apply_cancellation(state, i, model, &mut report);
        }
    }

    state.tick += 1;
    report
}

/// Halt the targets of a just-completed cancelling event: their in-flight
/// tokens are removed, their progress is reset, and their nodes — except
/// those shared with the canceller's own region — are disabled for the rest
/// of the run.
pub fn apply_cancellation(
    state: &mut SimState,
    canceller: usize,
    model: &Model,
    report: &mut TickReport,
) {
    let canceller_event = &model.events[canceller];
    let targets: Vec<usize> = match canceller_event.cancels.as_ref() {
        Some(tm_core::CancelSpec::All) => {
            (0..model.events.len()).filter(|&i| i != canceller).collect()
        }
        Some(tm_core::CancelSpec::Events(ids)) => ids
            .iter()
            .filter_map(|id| model.events.iter().position(|e| &e.id == id))
            .collect(),
        None => Vec::new(),
    };
    for target in targets {
        let region = &model.events[target].region;
        let before = state.tokens.len();
        state.tokens.retain(|t| !region.contains(&t.at));
        report.removed += before - state.tokens.len();
        for flag in &mut state.coverage[target] {
            *flag = false;
        }
        for node in region {
            if !canceller_event.region.contains(node) {
                state.disabled.insert(node.clone());
            }
        }
    }
}

/// Step until quiescence — no tokens alive and no stimulus still to come —
/// or until the tick budget runs out, whichever is first.
pub fn run(model: &Model, schedule: &[Stimulus], max_ticks: u64) -> Result<Trace, SimError> {
    if max_ticks == 0 {
        return Err(SimError::ZeroBudget);
    }
    let mut state = init_sim(model, schedule)?;
    let mut trace = Trace {
        executions: Vec::new(),
        completions: Vec::new(),
        exhausted: false,
        final_state: FinalSummary::default(),
    };
    let mut ticks_used = 0;
    loop {
        let pending = state.next_stimulus < state.schedule.len();
        if state.tokens.is_empty() && !pending {
            break;
        }
        if ticks_used == max_ticks {
            trace.exhausted = true;
            break;
        }
        let tick = state.tick;
        let report = step(&mut state, model);
        trace.executions.extend(report.executions);
        trace
            .completions
            .extend(report.completions.into_iter().map(|e| (tick, e)));
        ticks_used += 1;
    }
    trace.final_state = FinalSummary {
        tick: state.tick,
        live_tokens: state.tokens.len(),
        stores: state.stores.clone(),
    };
    Ok(trace)
}
