"""Maximal-torus groups of easy quantum groups, computed exactly."""
from .cyclo import Cyclo, parse_scalar
from .fpgroups import Classification, Presentation, analyze, parse_presentation, verdicts
from .matrices import CycloMatrix, UnitaryMatrix, parse_unitary
from .partitions import ColoredPartition, parse_partition, saturate_category
from .torus import (ExtractionConfig, TorusReport, character_image, closed_form, extract,
                    extract_easy, named_model)

__version__ = "0.1.0"

__all__ = [
    "Cyclo", "parse_scalar", "Classification", "Presentation", "analyze", "parse_presentation",
    "verdicts", "CycloMatrix", "UnitaryMatrix", "parse_unitary", "ColoredPartition",
    "parse_partition", "saturate_category", "ExtractionConfig", "TorusReport",
    "character_image", "closed_form", "extract", "extract_easy", "named_model",
]
