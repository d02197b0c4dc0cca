// Pure HTML-string views. No state lives here; everything renders from the
// controller's AppState so tests can assert on markup directly.

import { escapeHtml, flagAnchor, score, severity } from "./format";
import type { AppState } from "./controller";
import type {
  CandidateSummary,
  ConsistencyReport,
  RiskFlag,
  ScorecardDetail,
} from "./types";

function stageBadge(stage: string): string {
  return `<span class="stage stage-${stage.toLowerCase()}">${escapeHtml(stage)}</span>`;
}

function penaltyCell(row: CandidateSummary): string {
  const amount = score(row.r_total);
  if (row.flag_count === 0) {
    return `<td class="penalty">${amount}</td>`;
  }
  // a nonzero penalty always links to the flag rationales on the scorecard
  return (
    `<td class="penalty"><a class="penalty-link" ` +
    `href="#flags-${escapeHtml(row.candidate_id)}" ` +
    `data-action="open" data-candidate="${escapeHtml(row.candidate_id)}">` +
    `${amount}</a></td>`
  );
}

export function renderBatch(state: AppState): string {
  if (!state.batchLoaded) {
    return `<section class="batch"><p class="batch-hint">Request a batch to start reviewing.</p></section>`;
  }
  if (state.batch.length === 0) {
    return `<section class="batch"><p class="empty-state">No candidates awaiting review.</p></section>`;
  }
  const rows = state.batch
    .map((row) => {
      const cid = escapeHtml(row.candidate_id);
      return (
        `<tr class="batch-row" data-candidate="${cid}">` +
        `<td class="rank">${row.rank}</td>` +
        `<td class="cid"><a data-action="open" data-candidate="${cid}" href="#card-${cid}">${cid}</a></td>` +
        `<td class="total">${score(row.s_total)}</td>` +
        `<td>${score(row.t_tech)}</td>` +
        `<td>${score(row.t_culture)}</td>` +
        penaltyCell(row) +
        `<td class="flags">${row.flag_count}</td>` +
        `<td>${stageBadge(row.stage)}</td>` +
        `<td class="decision-cell">${row.decision_version > 0 ? `v${row.decision_version}` : "&mdash;"}</td>` +
        `</tr>`
      );
    })
    .join("");
  return (
    `<section class="batch"><table><thead><tr>` +
    `<th>#</th><th>candidate</th><th>total</th><th>tech</th><th>culture</th>` +
    `<th>penalty</th><th>flags</th><th>stage</th><th>decision</th>` +
    `</tr></thead><tbody>${rows}</tbody></table></section>`
  );
}

function renderFlags(candidateId: string, flags: RiskFlag[]): string {
  const cid = escapeHtml(candidateId);
  if (flags.length === 0) {
    return `<section id="flags-${cid}" class="flags"><p>No risk penalties.</p></section>`;
  }
  const rows = flags
    .map((flag, i) => {
      const anchor = flagAnchor(candidateId, i);
      return (
        `<li class="flag-row">` +
        `<span class="flag-kind">${escapeHtml(flag.kind)}</span> ` +
        `<span class="flag-severity">${severity(flag.severity)}</span> ` +
        `<a class="flag-link" href="#${anchor}">rationale</a>` +
        `</li>`
      );
    })
    .join("");
  const rationales = flags
    .map((flag, i) => {
      const refs = flag.evidence_ids.map(escapeHtml).join(", ") || "none";
      return (
        `<p class="rationale" id="${flagAnchor(candidateId, i)}">` +
        `${escapeHtml(flag.rationale)} <span class="evidence">(evidence: ${refs})</span></p>`
      );
    })
    .join("");
  return `<section id="flags-${cid}" class="flags"><ul>${rows}</ul>${rationales}</section>`;
}

function renderDecomposition(detail: ScorecardDetail): string {
  const sc = detail.scorecard;
  // Display-only sum check; must agree with the server total exactly.
  const sum = sc.beta * sc.t_tech + (1 - sc.beta) * sc.t_culture - sc.r_total;
  const ok = Object.is(sum, sc.s_total);
  const cid = escapeHtml(sc.candidate_id);
  const warning = ok
    ? ""
    : `<p class="sum-mismatch">Decomposition does not sum to the stored total; refresh this scorecard.</p>`;
  return (
    `<section class="decomposition" data-sum-ok="${ok}">` +
    `<span class="term term-tech">${sc.beta} &times; ${score(sc.t_tech)}</span> + ` +
    `<span class="term term-culture">${1 - sc.beta} &times; ${score(sc.t_culture)}</span> &minus; ` +
    `<a class="term term-risk penalty-link" href="#flags-${cid}">${score(sc.r_total)}</a> = ` +
    `<span class="term-total">${score(sc.s_total)}</span>${warning}</section>`
  );
}

function renderConsistency(consistency: ConsistencyReport | null): string {
  if (consistency === null) {
    return "";
  }
  const item = (p: { description: string }) => `<li>${escapeHtml(p.description)}</li>`;
  const sims = consistency.similarities.map(item).join("") || "<li>none</li>";
  const diffs = consistency.discrepancies.map(item).join("") || "<li>none</li>";
  return (
    `<section class="consistency">` +
    `<h3>Corroborated</h3><ul class="similarities">${sims}</ul>` +
    `<h3>Discrepancies</h3><ul class="discrepancies">${diffs}</ul>` +
    `</section>`
  );
}

function renderDecisionControls(state: AppState, detail: ScorecardDetail): string {
  const cid = escapeHtml(detail.scorecard.candidate_id);
  if (detail.decision !== null) {
    const d = detail.decision;
    return (
      `<p class="decision-badge">Decided: <strong>${escapeHtml(d.verdict)}</strong> ` +
      `(v${d.version}, ${escapeHtml(d.reviewer_id)})</p>`
    );
  }
  if (state.pending && state.pending.candidateId === detail.scorecard.candidate_id) {
    return (
      `<div class="confirm-prompt">` +
      `<p>Submit <strong>${escapeHtml(state.pending.verdict)}</strong> for ${cid}?</p>` +
      `<button data-action="confirm-decision">Confirm</button>` +
      `<button data-action="cancel-decision">Cancel</button>` +
      `</div>`
    );
  }
  return (
    `<form class="decision-form" data-candidate="${cid}">` +
    `<select name="verdict">` +
    `<option value="">choose&hellip;</option>` +
    `<option value="advance">advance</option>` +
    `<option value="reject">reject</option>` +
    `<option value="defer">defer</option>` +
    `</select>` +
    `<input name="notes" placeholder="notes (optional)">` +
    `<button data-action="request-decision" data-candidate="${cid}">Decide</button>` +
    `</form>`
  );
}

export function renderScorecard(state: AppState): string {
  const detail = state.detail;
  if (detail === null) {
    return "";
  }
  const sc = detail.scorecard;
  const cid = escapeHtml(sc.candidate_id);
  return (
    `<article class="scorecard" id="card-${cid}">` +
    `<h2>${cid} ${stageBadge(detail.stage)}</h2>` +
    renderDecomposition(detail) +
    `<section class="technical"><h3>Technical</h3>` +
    `<p>${escapeHtml(sc.technical_rationale) || "No rationale recorded."}</p></section>` +
    renderFlags(sc.candidate_id, sc.risk_flags) +
    renderConsistency(detail.consistency) +
    renderDecisionControls(state, detail) +
    `</article>`
  );
}

export function renderConflict(state: AppState): string {
  if (state.conflict === null) {
    return "";
  }
  return (
    `<div class="conflict-dialog" role="alertdialog">` +
    `<p>Another reviewer already decided ${escapeHtml(state.conflict.candidateId)}: ` +
    `${escapeHtml(state.conflict.message)}</p>` +
    `<button data-action="conflict-reload">Reload and retry</button>` +
    `<button data-action="conflict-dismiss">Dismiss</button>` +
    `</div>`
  );
}

export function renderBanner(state: AppState): string {
  if (state.banner === null) {
    return "";
  }
  const cls = state.banner.kind === "error" ? "error-banner" : "info-banner";
  const retry =
    state.banner.kind === "error"
      ? ` <button data-action="retry-batch">Retry</button>`
      : "";
  return `<div class="${cls}">${escapeHtml(state.banner.text)}${retry}</div>`;
}

export function renderApp(state: AppState): string {
  return (
    `<header><h1>Screening review</h1>` +
    `<button data-action="next-batch">Next batch</button></header>` +
    renderBanner(state) +
    renderConflict(state) +
    renderBatch(state) +
    renderScorecard(state) +
    `<footer><form class="feedback-form">` +
    `<input name="feedback" placeholder="feedback for the screening team">` +
    `<button data-action="send-feedback">Send</button>` +
    `</form></footer>`
  );
}
