"""Verification reports and the identity suites."""

from glft.verification.report import VerificationReport, ViolationTracker, combine, jsonable

__all__ = ['VerificationReport', 'ViolationTracker', 'combine', 'jsonable']
