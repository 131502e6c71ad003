"""Write SVG drawings of the dimer graphs of the bundled patterns.

    python demos/render_patterns.py [outdir]
"""

import sys
from pathlib import Path

from adet.cli import render_svg
from adet.fixtures import hexagon_pattern, single_cell_pattern, square_pattern
from adet.kasteleyn import to_dimer_graph

outdir = Path(sys.argv[1] if len(sys.argv) > 1 else "dimer-svg")
outdir.mkdir(parents=True, exist_ok=True)
for name, pat in (("hexagon", hexagon_pattern()), ("square", square_pattern()),
                  ("single-cell", single_cell_pattern())):
    graph = to_dimer_graph(pat)
    path = outdir / f"{name}.svg"
    path.write_text(render_svg(graph))
    print(f"{path}: {len(graph.black)}+{len(graph.white)} nodes, {len(graph.edges)} edges")
