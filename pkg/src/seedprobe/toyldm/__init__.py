"""Miniature conditional latent diffusion model: data, VAE, denoiser, sampler."""

from .dataset import (
    ConceptLabel,
    ConceptSpec,
    DatasetSpec,
    NULL_CONCEPT,
    ToyImage,
    dataset_spec_hash,
    default_dataset_spec,
    make_dataset,
    read_dataset_spec,
    write_dataset_spec,
)
from .schedule import NoiseSchedule, build_schedule, forward_diffuse, gamma_coeff
from .vae import VaeParams, VaeTrainConfig, decode, encode, encode_posterior, train_vae
from .denoiser import (
    DenoiserParams,
    DenoiserTrainConfig,
    denoiser_predict,
    train_denoiser,
)
from .sampling import diffusion_inference, generate_latent, make_step_grid
from .checkpoint import ModelCheckpoint, checkpoint_file_hash, load_checkpoint, save_checkpoint

__all__ = [
    "ConceptLabel",
    "ConceptSpec",
    "DatasetSpec",
    "NULL_CONCEPT",
    "ToyImage",
    "dataset_spec_hash",
    "default_dataset_spec",
    "make_dataset",
    "read_dataset_spec",
    "write_dataset_spec",
    "NoiseSchedule",
    "build_schedule",
    "forward_diffuse",
    "gamma_coeff",
    "VaeParams",
    "VaeTrainConfig",
    "decode",
    "encode",
    "encode_posterior",
    "train_vae",
    "DenoiserParams",
    "DenoiserTrainConfig",
    "denoiser_predict",
    "train_denoiser",
    "diffusion_inference",
    "generate_latent",
    "make_step_grid",
    "ModelCheckpoint",
    "checkpoint_file_hash",
    "load_checkpoint",
    "save_checkpoint",
]
