# File: RdmIO.py
# Path: FermiCorr/Core/RdmIO.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-26
# Last Modified: 2025-04-11
# Description: Orbital RDM text files in, scan tables (CSV/JSON) out

import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np

from Core.DensMat import DensityMatrix, HermitianOperator, AsDensityMatrix
from Core.Errors import ValidationError

Logger = logging.getLogger('FermiCorr.RdmIO')

MagicLine = 'orbrdm 1'
Version = 1
KindDimensions = {'one': 4, 'two': 16}
KindShapes = {'one': (4,), 'two': (4, 4)}
BasisDeclaration = 'omega,up,down,updown'
SignConvention = 'jw-lsb'
HermiticityTolerance = 1e-9
ScanFormats = ('csv', 'json')
DefaultParameterNames = ('T', 'r', 'p', 'a', 'c')

PathLike = Union[str, Path]


@dataclass(frozen=True)
class RdmFile:
    """Parsed orbital RDM file with its header declarations and sparse entries."""

    Version: int
    Kind: str
    Basis: str
    Signs: str
    Entries: Tuple[Tuple[int, int, complex], ...]

    @property
    def Dimension(self) -> int:
        return KindDimensions[self.Kind]

    def Matrix(self) -> np.ndarray:
        """Dense matrix with missing lower-triangle entries filled by conjugation."""
        Given: Dict[Tuple[int, int], complex] = {(I, J): Value for I, J, Value in self.Entries}
        Matrix = np.zeros((self.Dimension, self.Dimension), dtype=complex)
        for (I, J), Value in Given.items():
            Matrix[I, J] = Value
            if (J, I) not in Given:
                Matrix[J, I] = np.conj(Value)

        Asymmetry = float(np.max(np.abs(Matrix - Matrix.conj().T)))
        if Asymmetry > HermiticityTolerance:
            raise ValidationError(f"RDM is not Hermitian (max deviation {Asymmetry:.3e})")
        return 0.5 * (Matrix + Matrix.conj().T)

    def Density(self) -> DensityMatrix:
        return DensityMatrix(self.Matrix(), KindShapes[self.Kind])


def _Header(Lines: List[Tuple[int, str]], Source: str) -> Tuple[str, str, str]:
    if len(Lines) < 4:
        raise ValidationError(f"{Source}: header needs 4 lines, found {len(Lines)}")
    (_, Magic), (KindLine, Kind), (BasisLine, Basis), (SignLine, Signs) = Lines[:4]
    if Magic != MagicLine:
        raise ValidationError(f"{Source}: bad magic/version line {Magic!r}, expected {MagicLine!r}")

    Key, _, Value = Kind.partition(' ')
    if Key != 'kind' or Value not in KindDimensions:
        raise ValidationError(f"{Source}:{KindLine}: expected 'kind one|two', got {Kind!r}")
    Kind = Value

    Key, _, Value = Basis.partition(' ')
    if Key != 'basis' or Value != BasisDeclaration:
        raise ValidationError(f"{Source}:{BasisLine}: unsupported basis declaration {Basis!r}")

    Key, _, Value = Signs.partition(' ')
    if Key != 'signs' or Value != SignConvention:
        raise ValidationError(f"{Source}:{SignLine}: unsupported sign convention {Signs!r}")
    return Kind, Value, BasisDeclaration


def ParseRdmText(Text: str, Source: str = '<string>') -> RdmFile:
    """
    Parse the text form of an orbital RDM.

    Args:
        Text: File contents
        Source: Name used in error messages

    Returns:
        RdmFile
    """
    Lines = [(Number, Line.strip()) for Number, Line in enumerate(Text.splitlines(), start=1)]
    Lines = [(Number, Line) for Number, Line in Lines if Line and not Line.startswith('#')]
    Kind, Signs, Basis = _Header(Lines, Source)
    Dimension = KindDimensions[Kind]

    Entries: Dict[Tuple[int, int], complex] = {}
    for Number, Line in Lines[4:]:
        Fields = Line.split()
        if len(Fields) != 4:
            raise ValidationError(f"{Source}:{Number}: expected 'i j re im', got {Line!r}")
        try:
            I, J = int(Fields[0]), int(Fields[1])
            Value = complex(float(Fields[2]), float(Fields[3]))
        except ValueError:
            raise ValidationError(f"{Source}:{Number}: malformed entry {Line!r}")
        if not (0 <= I < Dimension and 0 <= J < Dimension):
            raise ValidationError(f"{Source}:{Number}: index ({I}, {J}) out of range for dimension {Dimension}")
        if (I, J) in Entries:
            raise ValidationError(f"{Source}:{Number}: duplicate entry ({I}, {J})")
        Entries[(I, J)] = Value

    return RdmFile(Version, Kind, Basis, Signs, tuple((I, J, Value) for (I, J), Value in Entries.items()))


def ReadRdmFile(FilePath: PathLike) -> RdmFile:
    FilePath = Path(FilePath)
    if not FilePath.exists():
        raise ValidationError(f"RDM file not found: {FilePath}")
    with open(FilePath, 'r', encoding='utf-8') as File:
        return ParseRdmText(File.read(), str(FilePath))


def ParseRdm(FilePath: PathLike) -> DensityMatrix:
    """
    Read an orbital RDM file into a validated density matrix.

    Args:
        FilePath: Path of an 'orbrdm 1' file

    Returns:
        DensityMatrix with shape (4,) for kind one or (4, 4) for kind two
    """
    Rho = ReadRdmFile(FilePath).Density()
    Logger.debug(f"Loaded {FilePath} with shape {Rho.Shape.Dims}")
    return Rho


def WriteRdm(Rho: Union[DensityMatrix, HermitianOperator, np.ndarray], FilePath: PathLike,
             Kind: Optional[str] = None) -> None:
    """
    Write the upper triangle of an orbital RDM with 17 significant digits.

    Args:
        Rho: 4x4 or 16x16 density matrix
        FilePath: Output path
        Kind: 'one' or 'two' (inferred from the dimension when omitted)
    """
    Rho = AsDensityMatrix(Rho)
    if Kind is None:
        Kind = {4: 'one', 16: 'two'}.get(Rho.Dimension)
    if Kind not in KindDimensions or KindDimensions[Kind] != Rho.Dimension:
        raise ValidationError(f"Cannot store a {Rho.Dimension}-dimensional matrix as kind {Kind!r}")

    Lines = [MagicLine, f"kind {Kind}", f"basis {BasisDeclaration}", f"signs {SignConvention}"]
    for I in range(Rho.Dimension):
        for J in range(I, Rho.Dimension):
            Value = Rho.Matrix[I, J]
            if Value != 0:
                Lines.append(f"{I} {J} {Value.real:.17g} {Value.imag:.17g}")
    with open(FilePath, 'w', encoding='utf-8') as File:
        File.write('\n'.join(Lines) + '\n')


@dataclass
class ScanRecord:
    """One row of a scan: named parameters, named measures and a status message."""

    Parameters: Dict[str, float]
    Measures: Dict[str, float] = field(default_factory=dict)
    Status: str = 'ok'

    def Columns(self) -> List[str]:
        return list(self.Parameters) + list(self.Measures) + ['Status']

    def Values(self) -> List[Union[float, str]]:
        return list(self.Parameters.values()) + list(self.Measures.values()) + [self.Status]


def _CheckUniform(Records: Sequence[ScanRecord]) -> List[str]:
    if not Records:
        return []
    Columns = Records[0].Columns()
    for Index, Record in enumerate(Records[1:], start=1):
        if Record.Columns() != Columns:
            raise ValidationError(f"Scan record {Index} has columns {Record.Columns()}, expected {Columns}")
    return Columns


def _CsvCell(Value: Union[float, str]) -> str:
    return Value if isinstance(Value, str) else repr(float(Value))


def _JsonCell(Value: Union[float, str]) -> Union[float, str, None]:
    if isinstance(Value, str):
        return Value
    return None if math.isnan(Value) else float(Value)


def FormatScan(Records: Sequence[ScanRecord], Format: str = 'csv',
               Columns: Optional[Sequence[str]] = None) -> str:
    """
    Render scan records as CSV or JSON text.

    Args:
        Records: Uniform scan records in grid order
        Format: 'csv' or 'json'
        Columns: Header for an empty CSV table

    Returns:
        str: Deterministic text with '.' decimals
    """
    if Format not in ScanFormats:
        raise ValidationError(f"Unknown scan format {Format!r}; use csv or json")
    Header = _CheckUniform(Records) or list(Columns or [])

    if Format == 'json':
        Rows = [dict(zip(Header, (_JsonCell(Value) for Value in Record.Values()))) for Record in Records]
        return json.dumps(Rows, indent=2) + '\n'

    Buffer = io.StringIO()
    Writer = csv.writer(Buffer, lineterminator='\n')
    Writer.writerow(Header)
    for Record in Records:
        Writer.writerow([_CsvCell(Value) for Value in Record.Values()])
    return Buffer.getvalue()


def WriteScan(Records: Sequence[ScanRecord], Format: str = 'csv', FilePath: Optional[PathLike] = None,
              Columns: Optional[Sequence[str]] = None, Stream: Optional[TextIO] = None) -> None:
    """
    Write scan records to a file, or to standard output when no path is given.

    Args:
        Records: Uniform scan records
        Format: 'csv' or 'json'
        FilePath: Output path (None for Stream / stdout)
        Columns: Header for an empty CSV table
        Stream: Text stream used when FilePath is None
    """
    Text = FormatScan(Records, Format, Columns)
    if FilePath is None:
        (Stream or sys.stdout).write(Text)
        return
    with open(FilePath, 'w', encoding='utf-8', newline='') as File:
        File.write(Text)
    Logger.info(f"Wrote {len(Records)} records to {FilePath}")


def _Split(Row: Dict[str, Union[float, str, None]], ParameterNames: Sequence[str]) -> ScanRecord:
    Parameters, Measures, Status = {}, {}, 'ok'
    for Name, Value in Row.items():
        if Name == 'Status':
            Status = str(Value)
            continue
        Number = math.nan if Value is None or Value == '' else float(Value)
        (Parameters if Name in ParameterNames else Measures)[Name] = Number
    return ScanRecord(Parameters, Measures, Status)


def ReadScan(FilePath: PathLike, Format: Optional[str] = None,
             ParameterNames: Sequence[str] = DefaultParameterNames) -> List[ScanRecord]:
    """
    Read a scan table written by WriteScan.

    Args:
        FilePath: CSV or JSON file
        Format: 'csv' or 'json' (default: from the file suffix)
        ParameterNames: Column names treated as parameters

    Returns:
        List of ScanRecord in file order
    """
    FilePath = Path(FilePath)
    Format = Format or FilePath.suffix.lstrip('.').lower()
    if Format not in ScanFormats:
        raise ValidationError(f"Unknown scan format {Format!r}; use csv or json")
    with open(FilePath, 'r', encoding='utf-8', newline='') as File:
        if Format == 'json':
            Rows = json.load(File)
        else:
            Rows = list(csv.DictReader(File))
    return [_Split(Row, ParameterNames) for Row in Rows]
