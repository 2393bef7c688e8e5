"""Theorem suites, corpora and reports."""

from .corpus import DEFAULT_SPECS, CorpusConfig, corpus, parse_corpus
from .report import CheckReport, exit_code, render_report
from .suites import SUITE_IDS, SUITES, parse_suites, run_suite

__all__ = [
    "DEFAULT_SPECS",
    "CorpusConfig",
    "corpus",
    "parse_corpus",
    "CheckReport",
    "exit_code",
    "render_report",
    "SUITE_IDS",
    "SUITES",
    "parse_suites",
    "run_suite",
]
