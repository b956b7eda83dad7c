"""Scattered linear sets of the projective line, their geometry and MRD codes."""

from __future__ import annotations

from .field import FieldCtx, FieldError, cached_field, field_for_q, make_field
from .linpoly import LinPoly
from .linset import (LinearSetSpec, WeightSpectrum, is_scattered, known_catalog, lp_poly,
                     new_scattered_poly, point_weight, weight_spectrum)
from .geometry import (ProjSubspace, charact2_criterion, generating_point, intersection_number,
                       lp_criterion, meets_subgeometry, project, pseudoregulus_criterion)
from .rmcode import (RMCode, delsarte_dual, gabidulin, gabidulin_recognize, is_mrd, left_idealiser,
                     rank_distribution, right_idealiser, twisted_gabidulin, twisted_recognize)
from .equiv import gl_equivalent, pgl_linear_set_equivalent

__version__ = "0.1.0"

__all__ = [
    "FieldCtx", "FieldError", "cached_field", "field_for_q", "make_field", "LinPoly",
    "LinearSetSpec", "WeightSpectrum", "is_scattered", "known_catalog", "lp_poly",
    "new_scattered_poly", "point_weight", "weight_spectrum", "ProjSubspace", "charact2_criterion",
    "generating_point", "intersection_number", "lp_criterion", "meets_subgeometry", "project",
    "pseudoregulus_criterion", "RMCode", "delsarte_dual", "gabidulin", "gabidulin_recognize",
    "is_mrd", "left_idealiser", "rank_distribution", "right_idealiser", "twisted_gabidulin",
    "twisted_recognize", "gl_equivalent", "pgl_linear_set_equivalent",
]
