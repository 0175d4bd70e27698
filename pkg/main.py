# -*- coding: utf-8 -*-
from __future__ import annotations

import sys

# entry point: "python main.py <area> <verbo> ..." equivale a "svset ..."
from cli import main

if __name__ == "__main__":
    sys.exit(main())
