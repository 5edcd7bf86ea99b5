import logging
import re
from typing import Any, Dict, List, Optional, Sequence

from src.config.settings import appSettings

logger = logging.getLogger(__name__)

class CommandGuardrails:
    def __init__(self):
        # Accepted field spec shapes
        self.fieldSpecPatterns = [
            r'^cyclotomic:\d+$',
            r'^quadratic:-?\d+$',
            r'^finite:\d+:\d+$',
            r'^sextic(_s3)?$'
        ]

        # Characters an element expression may contain
        self.expressionPattern = r'^[\sA-Za-z_0-9+\-*/^().]+$'

        self.groupElementPattern = r'^(\d+|F\d+|e|t\d?s?|s)$'
        self.maxExpressionLength = 500

    def validate_field_spec(self, fieldSpec: str) -> Dict[str, Any]:
        """Validate a --field value before any context is built"""

        if not fieldSpec or not fieldSpec.strip():
            return {"isValid": False, "reason": "Field spec cannot be empty"}

        normalized = fieldSpec.strip().lower()
        if not any(re.match(pattern, normalized) for pattern in self.fieldSpecPatterns):
            logger.warning(f"⚠️ Rejected field spec: {fieldSpec}")
            return {
                "isValid": False,
                "reason": "Field spec must look like cyclotomic:N, quadratic:D, finite:P:M or sextic"
            }

        return {"isValid": True, "reason": "Field spec passed validation"}

    def validate_conductor(self, conductor: Optional[int]) -> Dict[str, Any]:
        if conductor is None:
            return {"isValid": False, "reason": "A conductor (--conductor) or a field (--field) is required"}
        if conductor < 2:
            return {"isValid": False, "reason": f"Conductor must be at least 2, got {conductor}"}
        return {"isValid": True, "reason": "Conductor passed validation"}

    def validate_dimension(self, dim: int, groupOrder: int) -> Dict[str, Any]:
        """Base dimension must be positive and its folding must fit under max_dim"""

        if dim is None or dim < 1:
            return {"isValid": False, "reason": "Dimension must be a positive integer"}

        foldedDim = dim ** groupOrder
        if foldedDim > appSettings.max_dim:
            return {
                "isValid": False,
                "reason": f"Folded dimension {dim}^{groupOrder} = {foldedDim} exceeds max_dim {appSettings.max_dim}"
            }

        return {"isValid": True, "reason": "Dimension passed validation"}

    def validate_group_tokens(self, tokens: Sequence[str]) -> Dict[str, Any]:
        for token in tokens:
            if not re.match(self.groupElementPattern, token.strip()):
                return {"isValid": False, "reason": f"Not a group element: {token!r}"}
        return {"isValid": True, "reason": "Group elements passed validation"}

    def validate_expression(self, expression: str) -> Dict[str, Any]:
        if not expression or not expression.strip():
            return {"isValid": False, "reason": "Element expression cannot be empty"}

        if len(expression) > self.maxExpressionLength:
            return {
                "isValid": False,
                "reason": f"Element expression too long. Keep it under {self.maxExpressionLength} characters."
            }

        if not re.match(self.expressionPattern, expression):
            return {"isValid": False, "reason": "Element expression contains unsupported characters"}

        return {"isValid": True, "reason": "Expression passed validation"}

    def validate_rational(self, text: str) -> Dict[str, Any]:
        if not re.match(r'^\s*-?\d+(\s*/\s*\d+)?\s*$', text or ""):
            return {"isValid": False, "reason": f"Not an exact rational p/q: {text!r}"}
        if re.match(r'^.*/\s*0+\s*$', text):
            return {"isValid": False, "reason": "Zero denominator"}
        return {"isValid": True, "reason": "Rational passed validation"}

    def validate_search_bounds(self, heightBound: int, termBound: int) -> Dict[str, Any]:
        if heightBound < 1 or termBound < 1:
            return {"isValid": False, "reason": "Search bounds must be positive"}
        return {"isValid": True, "reason": "Search bounds passed validation"}

    def validate_suites(self, suites: List[str], knownSuites: Sequence[str]) -> Dict[str, Any]:
        unknown = [suite for suite in suites if suite not in knownSuites]
        if unknown:
            return {
                "isValid": False,
                "reason": f"Unknown suite(s) {', '.join(unknown)}; choose from {', '.join(knownSuites)}"
            }
        return {"isValid": True, "reason": "Suites passed validation"}
