""" Versioned little-endian binary checkpoints.

Layout: magic (8 bytes), u32 version, u64 payload length, u32 CRC-32 of the payload, then the payload: u32 metadata
length, canonical JSON metadata, u32 array count and for every array: u16 name length, UTF-8 name, u8 rank,
u32 dimensions, raw little-endian float32 values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from json import dumps, loads
from os import makedirs, path, replace
from struct import pack, unpack_from, calcsize, error as StructError
from zlib import crc32

import numpy as np
from numpy.typing import NDArray

from wge.const import CHECKPOINT_MAGIC, CHECKPOINT_VERSION
from wge.exceptions import CheckpointError

HEADER_FORMAT: str = '<8sIQI'
HEADER_SIZE: int = calcsize(HEADER_FORMAT)
FLOAT_TYPE: np.dtype = np.dtype('<f4')


@dataclass
class Checkpoint:
    """ Decoded checkpoint content.

    :param metadata: JSON-compatible metadata
    :param arrays: named float32 arrays, in storage order
    """
    metadata: dict = field(default_factory=dict)
    arrays: dict[str, NDArray[np.float32]] = field(default_factory=dict)


def encode_checkpoint(checkpoint: Checkpoint) -> bytes:
    """ Serialise a checkpoint.

    :param checkpoint: the content
    :return: the file bytes
    """
    metadata: bytes = dumps(checkpoint.metadata, sort_keys=True, separators=(',', ':')).encode('utf-8')
    chunks: list[bytes] = [pack('<I', len(metadata)), metadata, pack('<I', len(checkpoint.arrays))]
    for name, array in checkpoint.arrays.items():
        encoded_name: bytes = name.encode('utf-8')
        values: NDArray = np.ascontiguousarray(array, dtype=FLOAT_TYPE)
        chunks.append(pack(f'<H{len(encoded_name)}sB', len(encoded_name), encoded_name, values.ndim))
        chunks.append(pack(f'<{values.ndim}I', *values.shape))
        chunks.append(values.tobytes())
    payload: bytes = b''.join(chunks)
    header: bytes = pack(HEADER_FORMAT, CHECKPOINT_MAGIC, CHECKPOINT_VERSION, len(payload), crc32(payload))
    return header + payload


def decode_checkpoint(data: bytes) -> Checkpoint:
    """ Parse checkpoint bytes.

    :param data: the file bytes
    :return: the content
    :raises CheckpointError: on bad magic, version, length, CRC or structure
    """
    if len(data) < HEADER_SIZE:
        raise CheckpointError("Checkpoint is truncated")
    magic, version, length, checksum = unpack_from(HEADER_FORMAT, data)
    if magic != CHECKPOINT_MAGIC:
        raise CheckpointError("Not a wge checkpoint (bad magic)")
    if version != CHECKPOINT_VERSION:
        raise CheckpointError(f"Unsupported checkpoint version {version}, expected {CHECKPOINT_VERSION}")
    payload: bytes = data[HEADER_SIZE:]
    if len(payload) != length:
        raise CheckpointError(f"Checkpoint payload has {len(payload)} bytes, header says {length}")
    if crc32(payload) != checksum:
        raise CheckpointError("Checkpoint CRC mismatch")
    try:
        offset: int = 0
        (meta_length,) = unpack_from('<I', payload, offset)
        offset += 4
        metadata: dict = loads(payload[offset:offset + meta_length].decode('utf-8'))
        offset += meta_length
        (count,) = unpack_from('<I', payload, offset)
        offset += 4
        arrays: dict[str, NDArray[np.float32]] = {}
        for _ in range(count):
            (name_length,) = unpack_from('<H', payload, offset)
            offset += 2
            name: str = payload[offset:offset + name_length].decode('utf-8')
            offset += name_length
            (rank,) = unpack_from('<B', payload, offset)
            offset += 1
            shape: tuple[int, ...] = unpack_from(f'<{rank}I', payload, offset)
            offset += 4 * rank
            size: int = int(np.prod(shape, dtype=np.int64)) * FLOAT_TYPE.itemsize
            if offset + size > len(payload):
                raise CheckpointError(f"Array '{name}' runs past the end of the checkpoint")
            arrays[name] = np.frombuffer(payload, FLOAT_TYPE, int(np.prod(shape, dtype=np.int64)), offset) \
                .reshape(shape).astype(np.float32)
            offset += size
    except (StructError, UnicodeDecodeError, ValueError) as error:
        raise CheckpointError(f"Malformed checkpoint payload ({error})")
    if offset != len(payload):
        raise CheckpointError("Trailing bytes after the last checkpoint array")
    return Checkpoint(metadata, arrays)


def save_checkpoint(filepath: str, checkpoint: Checkpoint) -> None:
    """ Write a checkpoint atomically (temporary file then rename).

    :param filepath: the destination
    :param checkpoint: the content
    """
    directory: str = path.dirname(path.abspath(filepath))
    makedirs(directory, exist_ok=True)
    temporary: str = f"{filepath}.tmp"
    try:
        with open(temporary, 'wb') as handle:
            handle.write(encode_checkpoint(checkpoint))
        replace(temporary, filepath)
    except OSError as error:
        raise CheckpointError(f"Cannot write checkpoint '{filepath}' ({error})")


def load_checkpoint(filepath: str) -> Checkpoint:
    """ Read a checkpoint file.

    :param filepath: the checkpoint
    :return: the content
    """
    try:
        with open(filepath, 'rb') as handle:
            data: bytes = handle.read()
    except OSError as error:
        raise CheckpointError(f"Cannot read checkpoint '{filepath}' ({error})")
    return decode_checkpoint(data)
