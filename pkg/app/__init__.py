"""Spectral laboratory for normal-form averaging of periodic KdV."""
