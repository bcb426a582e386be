import type { DisambiguatePayload, InventoryInfo, Method } from "./types.js";

export class ApiError extends Error {
  constructor(message: string, public status?: number) {
    super(message);
  }
}

async function checkJson(response: Response): Promise<unknown> {
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = (await response.json()) as { error?: { message?: string } };
      if (body.error?.message) detail = body.error.message;
    } catch {
      /* non-JSON error body */
    }
    throw new ApiError(detail, response.status);
  }
  return response.json();
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  async inventories(): Promise<InventoryInfo[]> {
    const response = await fetch(`${this.baseUrl}/api/inventories`);
    return (await checkJson(response)) as InventoryInfo[];
  }

  async disambiguate(
    text: string,
    method: Method,
    inventory: string,
    signal?: AbortSignal
  ): Promise<DisambiguatePayload> {
    const response = await fetch(`${this.baseUrl}/api/disambiguate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text, method, inventory }),
      signal,
    });
    return (await checkJson(response)) as DisambiguatePayload;
  }
}
