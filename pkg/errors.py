# -*- coding: utf-8 -*-
"""
errors.py
---------
Un'unica eccezione per tutta la libreria, costruita come HTTPException:
un codice stabile (kebab-case) e un dettaglio leggibile.
"""

from __future__ import annotations

from typing import Any, Dict


class SVError(Exception):
    def __init__(self, code: str, detail: str = "") -> None:
        super().__init__(f"[{code}] {detail}" if detail else code)
        self.code = code
        self.detail = detail

    def as_dict(self) -> Dict[str, Any]:
        return {"error": self.code, "detail": self.detail}
