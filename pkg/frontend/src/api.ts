/** Thin fetch client for the play service's JSON protocol. */

import type {
  Analysis,
  CreateResponse,
  GameResponse,
  InstanceDescription,
  MoveResponse,
  MoveWire,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

async function asJson<T>(resp: Response): Promise<T> {
  let body: unknown = null;
  try {
    body = await resp.json();
  } catch {
    // fall through: error reported from status below
  }
  if (!resp.ok) {
    const message =
      body && typeof body === "object" && "error" in body
        ? String((body as { error: unknown }).error)
        : `request failed with status ${resp.status}`;
    throw new ApiError(resp.status, message);
  }
  return body as T;
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private url(path: string): string {
    return `${this.base}${path}`;
  }

  async createGame(description: InstanceDescription): Promise<CreateResponse> {
    const resp = await fetch(this.url("/games"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(description),
    });
    return asJson<CreateResponse>(resp);
  }

  async getGame(id: string): Promise<GameResponse> {
    return asJson<GameResponse>(await fetch(this.url(`/games/${id}`)));
  }

  async submitMove(id: string, move: MoveWire): Promise<MoveResponse> {
    const resp = await fetch(this.url(`/games/${id}/moves`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(move),
    });
    return asJson<MoveResponse>(resp);
  }

  async analyze(id: string): Promise<Analysis> {
    return asJson<Analysis>(await fetch(this.url(`/games/${id}/analysis`)));
  }
}
