// Payload shapes of the screening API under /v1. Field names mirror the
// server exactly; the UI adds nothing and renames nothing.

export type Stage =
  | "INGESTED"
  | "PROFILED"
  | "AUGMENTED"
  | "ANALYZED"
  | "SCORED"
  | "RANKED"
  | "IN_REVIEW"
  | "DECIDED"
  | "STALLED"
  | "FAILED";

export type Verdict = "advance" | "reject" | "defer";

export interface CandidateSummary {
  candidate_id: string;
  rank: number;
  t_tech: number;
  t_culture: number;
  r_total: number;
  s_total: number;
  flag_count: number;
  stage: Stage;
  decision_version: number;
}

export interface RankingResponse {
  total: number;
  candidates: CandidateSummary[];
}

export interface BatchResponse {
  batch: CandidateSummary[];
}

export interface RiskFlag {
  kind: string;
  severity: number;
  rationale: string;
  evidence_ids: string[];
}

export interface CategoryScore {
  score: number;
  rationale: string;
}

export interface Scorecard {
  candidate_id: string;
  beta: number;
  t_tech: number;
  technical_rationale: string;
  technical_evidence_ids: string[];
  culture_categories: Record<string, CategoryScore>;
  t_culture: number;
  risk_flags: RiskFlag[];
  r_total: number;
  s_total: number;
  report_md: string;
}

export interface MatchedPair {
  description: string;
  claim_evidence_ids: string[];
  record_evidence_ids: string[];
}

export interface ConsistencyReport {
  candidate_id: string;
  similarities: MatchedPair[];
  discrepancies: MatchedPair[];
  red_flags: RiskFlag[];
}

export interface Decision {
  candidate_id: string;
  verdict: Verdict;
  notes: string;
  reviewer_id: string;
  decided_at: string;
  version: number;
}

export interface ScorecardDetail {
  scorecard: Scorecard;
  consistency: ConsistencyReport | null;
  stage: Stage;
  decision: Decision | null;
}

export interface DecisionRequest {
  candidate_id: string;
  verdict: Verdict;
  notes: string;
  reviewer_id: string;
  version: number;
}

export interface FeedbackRequest {
  candidate_id?: string | null;
  text: string;
}

export interface ApiErrorBody {
  error: { code: string; message: string };
}
