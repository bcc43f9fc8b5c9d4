"""Pade approximants and universal approximation witnesses."""
