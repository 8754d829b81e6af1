/** Shapes of the server's JSON payloads. The client renders these
 * verbatim; every label and percentage on screen comes from the API. */

export interface ModelBase {
  angle_deg: number;
  category: string;
}

export interface ModelDto {
  version: number;
  bases: ModelBase[];
  boundaries_deg: number[];
  r1: number;
  r2: number;
  r2_prime: number;
  r3: number;
  brown_sector_deg: [number, number];
  plateau_halfwidth_deg: number;
}

export interface CategoryRow {
  category: string;
  count: number;
  percentage: number;
}

export interface ShadeRow {
  lab: [number, number, number];
  count: number;
  composition: string;
  swatch: string;
}

export interface ReportDto {
  source: { path: string; width: number; height: number };
  model: { ref: string; sha256: string };
  categories: CategoryRow[];
  shades: Record<string, ShadeRow[]>;
  duration_ms: number;
}

export interface SessionDto {
  session_id: string;
  report: ReportDto;
}

export interface PatchResponse {
  report: ReportDto;
  changed_pixels: number;
  model: ModelDto;
}

export interface PatchError {
  detail: { constraint: string; message: string };
}

export interface PointsDto {
  radius: number[];
  angle: number[];
  category: string[];
}

export interface OverridePatch {
  boundary_edits?: Record<number, number>;
  r1?: number;
  r2?: number;
}
