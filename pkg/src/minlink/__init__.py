"""Min-# polygonal curve simplification under global Frechet and directed Hausdorff distance."""

__version__ = "0.1.0"
