"""Plane sections of the quartic: classification, bitangents and touching-conic families."""

from .bitangents import Bitangent, CertificationError, bitangents, fiber_multiplicity
from .families import (
    ContactCertificate,
    FamilyCensus,
    FamilyError,
    TouchingFamily,
    enumerate_families,
    family_from_bitangent_pair,
    obvious_families,
    reducible_members,
    touches_evenly,
)
from .section import Classification, PlaneError, PlaneQuartic, PlaneSpec, plane_through, section

__all__ = [
    "Bitangent",
    "CertificationError",
    "Classification",
    "ContactCertificate",
    "FamilyCensus",
    "FamilyError",
    "PlaneError",
    "PlaneQuartic",
    "PlaneSpec",
    "TouchingFamily",
    "bitangents",
    "enumerate_families",
    "family_from_bitangent_pair",
    "fiber_multiplicity",
    "obvious_families",
    "plane_through",
    "reducible_members",
    "section",
    "touches_evenly",
]
