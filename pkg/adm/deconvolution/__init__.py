from adm.deconvolution.deconvolution import DeconvOp, apply_deconv, check_properties, deconv_symbol, rho

__all__ = ["DeconvOp", "apply_deconv", "check_properties", "deconv_symbol", "rho"]
