"""Entry point for running wsn-graph-filtering as a module.

This allows the package to be executed as:
    python -m wsn_graph_filtering

It delegates to the CLI main function.
"""

from wsn_graph_filtering.cli.main import main

if __name__ == "__main__":
    main()
