// UI state machine. Talks to the server only through ApiClient; rendering
// is someone else's job. Decisions are two-step (request, then confirm) so a
// single misclick can never submit one, and a version conflict never drops
// the reviewer's input.

import { ApiClient, ApiError } from "./api";
import type { CandidateSummary, ScorecardDetail, Verdict } from "./types";

export interface PendingDecision {
  candidateId: string;
  verdict: Verdict;
  notes: string;
}

export interface ConflictInfo {
  candidateId: string;
  message: string;
}

export interface Banner {
  kind: "error" | "info";
  text: string;
}

export interface AppState {
  batch: CandidateSummary[];
  batchLoaded: boolean;
  detail: ScorecardDetail | null;
  pending: PendingDecision | null;
  conflict: ConflictInfo | null;
  banner: Banner | null;
}

const VERDICTS: readonly Verdict[] = ["advance", "reject", "defer"];

export class ReviewController {
  readonly state: AppState = {
    batch: [],
    batchLoaded: false,
    detail: null,
    pending: null,
    conflict: null,
    banner: null,
  };

  constructor(
    private readonly api: ApiClient,
    private readonly reviewerId: string,
  ) {}

  /** Fetch the next review batch. On failure the previous batch stays on
   * screen and an error banner with a retry affordance appears instead. */
  async loadNextBatch(): Promise<void> {
    try {
      const response = await this.api.nextBatch();
      this.state.batch = response.batch;
      this.state.batchLoaded = true;
      this.state.banner = null;
    } catch (err) {
      this.state.banner = { kind: "error", text: describe(err) };
    }
  }

  async openScorecard(candidateId: string): Promise<void> {
    try {
      this.state.detail = await this.api.scorecard(candidateId);
      this.state.banner = null;
    } catch (err) {
      this.state.banner = { kind: "error", text: describe(err) };
    }
  }

  /** Stage a decision for confirmation. Throws on a missing verdict so the
   * invalid submit never leaves the client. */
  requestDecision(candidateId: string, verdict: string, notes = ""): void {
    if (!VERDICTS.includes(verdict as Verdict)) {
      throw new ApiError("validation_failed", "choose a verdict before submitting", 0);
    }
    this.state.pending = { candidateId, verdict: verdict as Verdict, notes };
  }

  cancelPending(): void {
    this.state.pending = null;
  }

  /** Post the staged decision with the next version number. Returns true on
   * success; a version conflict keeps the pending decision and raises the
   * conflict prompt instead. */
  async confirmPending(): Promise<boolean> {
    const pending = this.state.pending;
    if (pending === null) {
      throw new ApiError("validation_failed", "no decision staged", 0);
    }
    try {
      const stored = await this.api.submitDecision({
        candidate_id: pending.candidateId,
        verdict: pending.verdict,
        notes: pending.notes,
        reviewer_id: this.reviewerId,
        version: this.currentVersion(pending.candidateId) + 1,
      });
      this.applyDecision(pending.candidateId, stored.version, pending.verdict);
      this.state.pending = null;
      this.state.conflict = null;
      return true;
    } catch (err) {
      if (err instanceof ApiError && err.code === "version_conflict") {
        this.state.conflict = { candidateId: pending.candidateId, message: err.message };
      } else {
        this.state.banner = { kind: "error", text: describe(err) };
      }
      return false;
    }
  }

  /** Refresh the conflicting candidate's current version so the reviewer can
   * re-confirm (or walk away). The staged verdict is preserved. */
  async reloadAfterConflict(): Promise<void> {
    const conflict = this.state.conflict;
    if (conflict === null) {
      return;
    }
    const detail = await this.api.scorecard(conflict.candidateId);
    if (this.state.detail?.scorecard.candidate_id === conflict.candidateId) {
      this.state.detail = detail;
    }
    const row = this.state.batch.find((r) => r.candidate_id === conflict.candidateId);
    if (row && detail.decision !== null) {
      row.decision_version = detail.decision.version;
      row.stage = detail.stage;
    }
    this.state.conflict = null;
  }

  dismissConflict(): void {
    this.state.conflict = null;
    this.state.pending = null;
  }

  async submitFeedback(text: string, candidateId?: string): Promise<string> {
    if (text.trim() === "") {
      throw new ApiError("validation_failed", "feedback text is required", 0);
    }
    const response = await this.api.submitFeedback({
      text,
      candidate_id: candidateId ?? null,
    });
    this.state.banner = { kind: "info", text: `feedback recorded (${response.feedback_id})` };
    return response.feedback_id;
  }

  private currentVersion(candidateId: string): number {
    const detailVersion =
      this.state.detail?.scorecard.candidate_id === candidateId
        ? this.state.detail.decision?.version ?? 0
        : 0;
    const row = this.state.batch.find((r) => r.candidate_id === candidateId);
    return Math.max(detailVersion, row?.decision_version ?? 0);
  }

  private applyDecision(candidateId: string, version: number, verdict: Verdict): void {
    const row = this.state.batch.find((r) => r.candidate_id === candidateId);
    if (row) {
      row.decision_version = version;
      row.stage = "DECIDED";
    }
    const detail = this.state.detail;
    if (detail && detail.scorecard.candidate_id === candidateId) {
      detail.stage = "DECIDED";
      detail.decision = {
        candidate_id: candidateId,
        verdict,
        notes: this.state.pending?.notes ?? "",
        reviewer_id: this.reviewerId,
        decided_at: new Date().toISOString(),
        version,
      };
    }
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) {
    return `${err.code}: ${err.message}`;
  }
  return String(err);
}
