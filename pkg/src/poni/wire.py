"""Length-prefixed binary framing shared by the audit wire protocol.

Frame layout: 4-byte big-endian payload length, 1 type byte, payload.
The decoder is total: anything malformed raises FrameError and nothing
else, so untrusted bytes can be fed to it directly.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from enum import IntEnum

__all__ = ["MsgType", "Frame", "FrameError", "MAX_PAYLOAD", "encode_frame", "decode_frame", "read_frame"]

MAX_PAYLOAD = 1 << 20

_HEADER = struct.Struct(">IB")


class MsgType(IntEnum):
    OSP_PREPARE = 0x01
    OSP_ACK = 0x02
    PONI_START = 0x10
    PONI_V = 0x11
    PONI_DECISION = 0x12
    PONI_CORRECTION = 0x13
    ERROR = 0xFF


class FrameError(ValueError):
    """Raised for any malformed frame."""


@dataclass(frozen=True)
class Frame:
    type: MsgType
    payload: bytes


def encode_frame(frame: Frame) -> bytes:
    if len(frame.payload) > MAX_PAYLOAD:
        raise FrameError("payload too large")
    return _HEADER.pack(len(frame.payload), int(frame.type)) + frame.payload


def decode_frame(data: bytes) -> Frame:
    """Decode exactly one frame occupying all of data."""
    if len(data) < _HEADER.size:
        raise FrameError("short frame header")
    length, mtype = _HEADER.unpack_from(data)
    if length > MAX_PAYLOAD:
        raise FrameError(f"payload length {length} exceeds cap")
    if mtype not in MsgType._value2member_map_:
        raise FrameError(f"unknown frame type 0x{mtype:02x}")
    payload = data[_HEADER.size :]
    if len(payload) != length:
        raise FrameError("payload length mismatch")
    return Frame(MsgType(mtype), bytes(payload))


def read_frame(recv_exact) -> Frame:
    """Read one frame through a recv_exact(n) -> bytes callable."""
    header = recv_exact(_HEADER.size)
    length, mtype = _HEADER.unpack(header)
    if length > MAX_PAYLOAD:
        raise FrameError(f"payload length {length} exceeds cap")
    if mtype not in MsgType._value2member_map_:
        raise FrameError(f"unknown frame type 0x{mtype:02x}")
    return Frame(MsgType(mtype), recv_exact(length))
