"""Natural-language game descriptions to validated, play-tested game bundles.

The package is organised around one pipeline: decompose a description,
retrieve 3D assets, plan and specify a procedural scene graph, generate
gameplay module and interaction code against a virtual engine, play-test
the result over an RPC bridge, and score everything in a final report.
"""

__version__ = "0.1.0"
