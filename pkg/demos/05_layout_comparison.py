"""
Comparing cooling layouts
=========================

Reduction and improvement of each cooling variant against drilled channels,
with the industrial acceptance limits applied to warpage and mold
temperature spread.
"""

from moldcool.report import bundled_comparison_tables

for table in bundled_comparison_tables():
    print(table.title)
    print(table.report().to_text())
    print()
