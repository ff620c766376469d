"""
coopgraph - Conditions for cooperation on networks
Version: 1.0.0
"""

__version__ = '1.0.0'
__author__ = 'coopgraph contributors'
__description__ = 'Exact and mean-field critical benefit-to-cost ratios for cooperation on graphs'
