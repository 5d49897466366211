"""coopkit - cooperation events in repeated games with incomplete information.

Compute f-belief and common f-belief fixed points over finite belief spaces,
characterize and enumerate cooperation events of conditional grim trigger
profiles, and cross-check every verdict with an exact discounted-payoff oracle.
"""

__version__ = "0.3.1"
