import type {
  CreateWalkResponse,
  DirectionName,
  EventResponse,
  KeySymbol,
  MapPayload,
  MapsResponse,
  MoveResponse,
  StateResponse,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

/** 404s get their own class so the UI can show a session-expired banner. */
export class NotFoundError extends ServiceError {
  constructor(message: string) {
    super(message, 404);
  }
}

/** Thin typed wrapper over the service HTTP contract. */
export class ServiceClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const resp = await this.fetchFn(this.baseUrl + path, init);
    if (resp.status === 404) {
      throw new NotFoundError(`${method} ${path}: not found`);
    }
    if (!resp.ok) {
      throw new ServiceError(`${method} ${path}: HTTP ${resp.status}`, resp.status);
    }
    return (await resp.json()) as T;
  }

  getMaps(): Promise<MapsResponse> {
    return this.request("GET", "/maps");
  }

  getMap(mapId: string): Promise<MapPayload> {
    return this.request("GET", `/maps/${mapId}`);
  }

  createWalk(mapId: string): Promise<CreateWalkResponse> {
    return this.request("POST", "/walks", { map_id: mapId });
  }

  postKey(walkId: string, symbol: KeySymbol): Promise<EventResponse> {
    return this.request("POST", `/walks/${walkId}/keys`, { symbol });
  }

  postMove(walkId: string, direction: DirectionName): Promise<MoveResponse> {
    return this.request("POST", `/walks/${walkId}/moves`, { direction });
  }

  getState(walkId: string, since: number, timeoutS = 0): Promise<StateResponse> {
    return this.request("GET", `/walks/${walkId}?since=${since}&timeout_s=${timeoutS}`);
  }
}
