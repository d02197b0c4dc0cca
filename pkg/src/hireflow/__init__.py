"""Candidate-screening engine: ingestion, agent analysis, scoring, ranking,
review workflow, and funnel economics."""

__version__ = "1.0.0"
