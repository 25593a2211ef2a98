"""HTTP inference service: /embed, /loglik, /generate, /healthz.

Backs the summarization pipeline's encoder and generator gateways with
small byte-level transformer models pinned as committed checkpoints, so
every response is deterministic and reproducible offline.
"""

__version__ = "0.1.0"
