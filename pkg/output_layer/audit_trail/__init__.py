"""Audit trail: structured run log shared by every layer."""

from output_layer.audit_trail.logger import LEVELS, AuditTrail

__all__ = ["AuditTrail", "LEVELS"]
