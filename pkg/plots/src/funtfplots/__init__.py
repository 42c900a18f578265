"""Figure rendering for funtf CLI output files.

Per-figure entry points live in their own modules so they can be run
with ``python3 -m``:

- ``funtfplots.histogram_grid``: grid of coherence histograms
- ``funtfplots.polytope2d``: shaded 2-D eigenstep polytope
- ``funtfplots.heatmap``: coherence over one torus fiber

Readers for the file formats are in ``funtfplots.io``.
"""
