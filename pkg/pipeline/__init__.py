"""
Pipeline orchestrating ingest, slicing and analysis for the command line
"""

from .skew_pipeline import SkewPipeline

__all__ = ['SkewPipeline']
