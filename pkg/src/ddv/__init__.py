"""ddv: privacy-preserving data vending toolkit.

Signature embedding for longitudinal records, decoder-inversion privacy
auditing, task-specific Mahalanobis retrieval, and a mock smart-contract
exchange protocol.
"""

__version__ = "0.1.0"
