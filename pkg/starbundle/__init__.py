"""Exact deformation quantization of principal bundles on polynomial models."""
